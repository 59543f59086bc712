#include "treeform/aggregate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace treeform {

using nlohmann::json;

AggregatedTree build_aggregated_tree(const FunsdDocument& doc) {
  AggregatedTree tree;
  std::map<int, int> node_of;  // entity id -> node id
  std::vector<Label> labels;
  for (const Entity& e : doc.entities) {
    if (e.label == Label::Other) continue;
    node_of[e.id] = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(e.text);
    labels.push_back(e.label);
  }

  std::set<AggregatedTree::Edge> edges;
  std::vector<bool> has_parent(tree.nodes.size(), false);
  for (const Link& l : doc.links) {
    auto from = node_of.find(l.from);
    auto to = node_of.find(l.to);
    if (from == node_of.end() || to == node_of.end()) continue;
    edges.insert({from->second, to->second, labels[to->second]});
    has_parent[to->second] = true;
  }
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    if (!has_parent[i]) edges.insert({kRoot, static_cast<int>(i), labels[i]});

  tree.edges.assign(edges.begin(), edges.end());
  return tree;
}

std::string serialize_aggregated(const AggregatedTree& tree) {
  json j;
  j["nodes"] = tree.nodes;
  json edges = json::array();
  for (const AggregatedTree::Edge& e : tree.edges)
    edges.push_back(json::array({e.parent, e.child, to_string(e.label)}));
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

AggregatedTree parse_aggregated(const std::string& raw) {
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error& err) {
    throw ParseError(err.what(), err.byte);
  }
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
    throw SchemaError("expected an object with `nodes` and `edges`");
  AggregatedTree tree;
  if (!j["nodes"].is_array()) throw SchemaError("`nodes` must be an array", "/nodes");
  for (const json& n : j["nodes"]) {
    if (!n.is_string()) throw SchemaError("node must be a string", "/nodes");
    tree.nodes.push_back(n.get<std::string>());
  }

  struct RawEdge {
    int a, b;
    Label label;
  };
  std::vector<RawEdge> raw_edges;
  const int n = static_cast<int>(tree.nodes.size());
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const json& je = j["edges"][i];
    std::string path = "/edges/" + std::to_string(i);
    if (!je.is_array() || je.size() != 3 || !je[0].is_number_integer() ||
        !je[1].is_number_integer() || !je[2].is_string())
      throw SchemaError("edge must be [int, int, label]", path);
    RawEdge e{je[0].get<int>(), je[1].get<int>(), Label::Other};
    auto label = label_from_string(je[2].get<std::string>());
    if (!label) throw SchemaError("unknown label `" + je[2].get<std::string>() + "`", path);
    e.label = *label;
    auto in_range = [n](int v) { return v == kRoot || (v >= 0 && v < n); };
    if (!in_range(e.a) || !in_range(e.b))
      throw SchemaError("edge index out of range", path);
    if (e.a == kRoot && e.b == kRoot)
      throw SchemaError("edge between two root sentinels", path);
    raw_edges.push_back(e);
  }

  // Edge lists in the wild print either endpoint first; recover the
  // orientation from the invariant that the edge label is the child's label.
  // Root edges fix their child's label; then iterate to a fixpoint preferring
  // the (parent, child) reading and flipping only on a label conflict.
  std::vector<std::optional<Label>> node_label(tree.nodes.size());
  for (const RawEdge& e : raw_edges) {
    if (e.a == kRoot) node_label[e.b] = e.label;
    if (e.b == kRoot) node_label[e.a] = e.label;
  }
  std::set<AggregatedTree::Edge> edges;
  std::vector<bool> resolved(raw_edges.size(), false);
  auto commit = [&](std::size_t i, int parent, int child) {
    if (node_label[child] && *node_label[child] != raw_edges[i].label)
      throw SchemaError("conflicting labels for node " + std::to_string(child),
                        "/edges/" + std::to_string(i));
    node_label[child] = raw_edges[i].label;
    edges.insert({parent, child, raw_edges[i].label});
    resolved[i] = true;
  };
  // First settle edges whose orientation is forced (root edges, or edges
  // where the known labels rule one reading out), then default the rest to
  // the (parent, child) reading.
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < raw_edges.size(); ++i) {
      if (resolved[i]) continue;
      const RawEdge& e = raw_edges[i];
      int parent = e.a, child = e.b;
      if (e.b == kRoot) std::swap(parent, child);
      if (parent == kRoot) {
        commit(i, parent, child);
        progress = true;
        continue;
      }
      bool fwd_ok = !node_label[child] || *node_label[child] == e.label;
      bool rev_ok = !node_label[parent] || *node_label[parent] == e.label;
      if (!fwd_ok && !rev_ok)
        throw SchemaError("edge label matches neither endpoint",
                          "/edges/" + std::to_string(i));
      if (fwd_ok && rev_ok && !node_label[child]) continue;  // still ambiguous
      if (!fwd_ok) std::swap(parent, child);
      commit(i, parent, child);
      progress = true;
    }
  }
  for (std::size_t i = 0; i < raw_edges.size(); ++i)
    if (!resolved[i]) commit(i, raw_edges[i].a, raw_edges[i].b);
  tree.edges.assign(edges.begin(), edges.end());
  return tree;
}

}  // namespace treeform
