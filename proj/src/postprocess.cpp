#include "treeform/postprocess.hpp"

#include <algorithm>
#include <set>

#include "treeform/align.hpp"

namespace treeform {

using nlohmann::json;

namespace {

std::optional<TreeFormNode> repair_node(const json& j, NodeKind kind,
                                        RepairReport& report);

void repair_kind_array(const json& parent, const char* key, NodeKind kind,
                       TreeFormNode& node, RepairReport& report) {
  if (!parent.contains(key)) return;
  const json& value = parent[key];
  auto handle = [&](const json& child) {
    if (auto repaired = repair_node(child, kind, report))
      node.children.push_back(std::move(*repaired));
  };
  if (value.is_array()) {
    for (const json& child : value) handle(child);
  } else if (value.is_object()) {
    handle(value);
  } else {
    ++report.discarded_paths;
  }
}

std::optional<TreeFormNode> repair_node(const json& j, NodeKind kind,
                                        RepairReport& report) {
  if (!j.is_object()) {
    ++report.discarded_paths;
    return std::nullopt;
  }
  std::string value;
  if (j.contains("value")) {
    if (!j["value"].is_string()) {
      ++report.discarded_paths;  // non-string leaf kills the node
      return std::nullopt;
    }
    value = j["value"].get<std::string>();
  }

  if (kind == NodeKind::Question) {
    if (value.empty() || !j.contains("answer") || !j["answer"].is_string() ||
        j["answer"].get<std::string>().empty()) {
      ++report.discarded_paths;
      return std::nullopt;
    }
    return TreeFormNode::question(value, j["answer"].get<std::string>());
  }

  TreeFormNode node{kind, "", {}};
  if (!value.empty()) node.children.push_back(TreeFormNode::leaf(value));
  repair_kind_array(j, "header", NodeKind::Header, node, report);
  repair_kind_array(j, "question", NodeKind::Question, node, report);
  repair_kind_array(j, "entry", NodeKind::Entry, node, report);

  if (kind == NodeKind::Entry) {
    // Entries hold question-answer pairs only.
    std::erase_if(node.children, [&](const TreeFormNode& c) {
      if (c.kind == NodeKind::Question || c.kind == NodeKind::Value) return false;
      ++report.discarded_paths;
      return true;
    });
    bool has_question = std::any_of(
        node.children.begin(), node.children.end(),
        [](const TreeFormNode& c) { return c.kind == NodeKind::Question; });
    if (!has_question) {
      ++report.discarded_paths;
      return std::nullopt;
    }
    return node;
  }

  // An empty header carries no information.
  if (node.children.empty()) {
    ++report.discarded_paths;
    return std::nullopt;
  }
  return node;
}

}  // namespace

std::pair<TreeFormDoc, RepairReport> repair_treeform(const json& raw) {
  TreeFormDoc doc;
  RepairReport report;
  if (!raw.is_object()) {
    if (!raw.is_null()) {
      ++report.discarded_paths;
      report.notes.push_back("top-level value is not an object");
    }
    return {doc, report};
  }
  TreeFormNode holder{NodeKind::Header, "", {}};
  repair_kind_array(raw, "header", NodeKind::Header, holder, report);
  repair_kind_array(raw, "question", NodeKind::Question, holder, report);
  repair_kind_array(raw, "entry", NodeKind::Entry, holder, report);
  for (const auto& item : raw.items())
    if (item.key() != "header" && item.key() != "question" && item.key() != "entry")
      ++report.discarded_paths;
  doc.roots = std::move(holder.children);
  return {doc, report};
}

namespace {

std::string subtree_text(const TreeFormNode& node) {
  std::string out;
  if (node.kind == NodeKind::Value) out = node.value;
  for (const TreeFormNode& c : node.children) {
    std::string t = subtree_text(c);
    if (t.empty()) continue;
    if (!out.empty()) out.push_back('\n');
    out += t;
  }
  return out;
}

std::size_t count_leaves(const TreeFormNode& node) {
  std::size_t n = node.kind == NodeKind::Value ? 1 : 0;
  for (const TreeFormNode& c : node.children) n += count_leaves(c);
  return n;
}

bool should_merge(const std::string& a, const std::string& b,
                  const DedupConfig& config) {
  double d = normalized_levenshtein(a, b);
  if (config.literal_distance_gate) return d > config.threshold;
  return 1.0 - d > config.threshold;
}

void dedup_siblings(std::vector<TreeFormNode>& children, const DedupConfig& config,
                    RepairReport& report) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < children.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < children.size() && !changed; ++j) {
        if (children[i].kind != children[j].kind) continue;
        std::string ti = subtree_text(children[i]);
        std::string tj = subtree_text(children[j]);
        if (ti.empty() && tj.empty()) continue;
        if (!should_merge(ti, tj, config)) continue;
        // Keep the longer text; ties keep the earlier sibling.
        std::size_t drop =
            codepoint_count(tj) > codepoint_count(ti) ? i : j;
        report.merged_leaves += static_cast<int>(count_leaves(children[drop]));
        children.erase(children.begin() + static_cast<long>(drop));
        changed = true;
      }
    }
  }
  for (TreeFormNode& c : children) dedup_siblings(c.children, config, report);
}

}  // namespace

std::pair<TreeFormDoc, RepairReport> dedup_leaves(const TreeFormDoc& doc,
                                                  const DedupConfig& config) {
  TreeFormDoc out = doc;
  RepairReport report;
  dedup_siblings(out.roots, config, report);
  return {std::move(out), report};
}

std::pair<FunsdDocument, RepairReport> dedup_long_entities(
    const FunsdDocument& doc, int min_len, const DedupConfig& config) {
  FunsdDocument out = doc;
  RepairReport report;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.entities.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < out.entities.size() && !changed; ++j) {
        const Entity& a = out.entities[i];
        const Entity& b = out.entities[j];
        if (a.label != b.label) continue;
        if (codepoint_count(a.text) <= static_cast<std::size_t>(min_len) ||
            codepoint_count(b.text) <= static_cast<std::size_t>(min_len))
          continue;
        if (!should_merge(a.text, b.text, config)) continue;
        std::size_t drop = codepoint_count(b.text) > codepoint_count(a.text) ? i : j;
        std::size_t keep = drop == i ? j : i;
        int dropped_id = out.entities[drop].id;
        int kept_id = out.entities[keep].id;
        // Links of the removed entity re-target the survivor.
        std::set<Link> links;
        for (Link l : out.links) {
          if (l.from == dropped_id) l.from = kept_id;
          if (l.to == dropped_id) l.to = kept_id;
          if (l.from != l.to) links.insert(l);
        }
        out.links.assign(links.begin(), links.end());
        out.entities.erase(out.entities.begin() + static_cast<long>(drop));
        ++report.removed_entities;
        changed = true;
      }
    }
  }
  return {std::move(out), report};
}

}  // namespace treeform
