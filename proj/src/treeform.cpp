#include "treeform/treeform.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace treeform {

using nlohmann::json;

const TreeFormNode* TreeFormNode::title_leaf() const {
  for (const TreeFormNode& c : children)
    if (c.kind == NodeKind::Value) return &c;
  return nullptr;
}

TreeFormNode TreeFormNode::leaf(std::string text) {
  return {NodeKind::Value, std::move(text), {}};
}

TreeFormNode TreeFormNode::question(std::string q, std::string a) {
  TreeFormNode answer{NodeKind::Answer, "", {leaf(std::move(a))}};
  return {NodeKind::Question, "", {leaf(std::move(q)), std::move(answer)}};
}

std::optional<std::string> check_invariants(const TreeFormNode& node,
                                            bool keep_unanswered) {
  std::size_t values = 0, answers = 0, questions = 0, others = 0;
  for (const TreeFormNode& c : node.children) {
    switch (c.kind) {
      case NodeKind::Value: ++values; break;
      case NodeKind::Answer: ++answers; break;
      case NodeKind::Question: ++questions; break;
      default: ++others; break;
    }
  }
  switch (node.kind) {
    case NodeKind::Value:
      if (!node.children.empty()) return "value leaf with children";
      if (node.value.empty()) return "empty value leaf";
      break;
    case NodeKind::Question:
      if (values != 1) return "question needs exactly one value leaf";
      if (answers != 1 && !(keep_unanswered && answers == 0))
        return "question needs exactly one answer";
      if (questions != 0 || others != 0) return "question with non-answer children";
      break;
    case NodeKind::Answer:
      if (values != 1 || node.children.size() != 1)
        return "answer needs exactly one value leaf";
      break;
    case NodeKind::Header:
      if (values > 1) return "header with more than one value leaf";
      if (answers != 0) return "header with a bare answer child";
      break;
    case NodeKind::Entry:
      if (values > 1) return "entry with more than one value leaf";
      if (questions == 0) return "entry without questions";
      if (answers != 0 || others != 0) return "entry with non-question children";
      break;
  }
  for (const TreeFormNode& c : node.children)
    if (auto err = check_invariants(c, keep_unanswered)) return err;
  return std::nullopt;
}

std::optional<std::string> check_invariants(const TreeFormDoc& doc,
                                            bool keep_unanswered) {
  for (const TreeFormNode& root : doc.roots) {
    if (root.kind == NodeKind::Answer || root.kind == NodeKind::Value)
      return "document roots must be headers, questions, or entries";
    if (auto err = check_invariants(root, keep_unanswered)) return err;
  }
  return std::nullopt;
}

std::pair<FunsdDocument, std::vector<ValidationIssue>> discard_incomplete(
    const FunsdDocument& doc, bool keep_unanswered) {
  std::map<int, Label> label_of;
  for (const Entity& e : doc.entities) label_of[e.id] = e.label;

  std::set<int> answered, prompted;
  for (const Link& l : doc.links) {
    auto from = label_of.find(l.from), to = label_of.find(l.to);
    if (from == label_of.end() || to == label_of.end()) continue;
    // A question linking to other questions acts as a section heading and is
    // kept even without a direct answer.
    if (from->second == Label::Question &&
        (to->second == Label::Answer || to->second == Label::Question)) {
      answered.insert(l.from);
      if (to->second == Label::Answer) prompted.insert(l.to);
    }
  }

  FunsdDocument out;
  out.page_width = doc.page_width;
  out.page_height = doc.page_height;
  std::vector<ValidationIssue> warnings;
  std::set<int> kept;
  for (const Entity& e : doc.entities) {
    const char* why = nullptr;
    if (e.label == Label::Other) why = "discarded `other` entity";
    else if (e.label == Label::Question && !answered.count(e.id) && !keep_unanswered)
      why = "discarded unanswered question";
    else if (e.label == Label::Answer && !prompted.count(e.id))
      why = "discarded unprompted answer";
    if (why) {
      warnings.push_back({ValidationIssue::Severity::Warning, e.id, why});
      continue;
    }
    kept.insert(e.id);
    out.entities.push_back(e);
  }
  for (const Link& l : doc.links)
    if (kept.count(l.from) && kept.count(l.to)) out.links.push_back(l);
  return {std::move(out), std::move(warnings)};
}

std::optional<int> select_form_title(const FunsdDocument& doc) {
  std::set<int> nested;  // headers with an incoming link from another header
  for (const Link& l : doc.links) {
    const Entity* from = doc.find(l.from);
    const Entity* to = doc.find(l.to);
    if (from && to && from->label == Label::Header && to->label == Label::Header)
      nested.insert(to->id);
  }
  const Entity* best = nullptr;
  for (const Entity& e : doc.entities) {
    if (e.label != Label::Header || !e.box || nested.count(e.id)) continue;
    if (!best) { best = &e; continue; }
    auto key = [](const Entity& x) {
      return std::tuple<int, int, int>(x.box->y0, x.box->x0, x.id);
    };
    if (key(e) < key(*best)) best = &e;
  }
  if (!best) return std::nullopt;
  return best->id;
}

namespace {

bool aligned_within(const std::vector<int>& starts, double epsilon) {
  std::vector<int> sorted = starts;
  std::sort(sorted.begin(), sorted.end());
  int median = sorted[sorted.size() / 2];
  for (int s : starts)
    if (std::abs(s - median) > epsilon) return false;
  return true;
}

}  // namespace

TableShape detect_table(const FunsdDocument& doc, const Entity& question,
                        const std::vector<const Entity*>& answers,
                        const ConversionConfig& config,
                        std::vector<ValidationIssue>* warnings) {
  for (const Entity* a : answers) {
    if (!a->box) {
      if (warnings)
        warnings->push_back({ValidationIssue::Severity::Warning, question.id,
                             "answer without bounding box; treating as multi-line"});
      return TableShape::Multiline;
    }
  }
  std::vector<int> xs, ys;
  for (const Entity* a : answers) {
    xs.push_back(a->box->x0);
    ys.push_back(a->box->y0);
  }
  double ex = config.column_epsilon_fraction * doc.effective_page_width();
  double ey = config.column_epsilon_fraction * doc.effective_page_height();
  if (aligned_within(xs, ex)) return TableShape::Column;
  if (aligned_within(ys, ey)) return TableShape::Row;
  return TableShape::Multiline;
}

namespace {

struct Interval {
  int lo = 0, hi = 0;
  bool overlaps_half(const Interval& other) const {
    int inter = std::min(hi, other.hi) - std::max(lo, other.lo);
    int smaller = std::min(hi - lo, other.hi - other.lo);
    if (smaller <= 0) return inter >= 0;  // degenerate boxes: touch counts
    return 2 * inter >= smaller;
  }
};

struct TableRows {
  std::vector<TreeFormNode> entries;
  std::vector<Interval> spans;  // vertical span per entry, same order
};

TableRows build_table_rows(std::vector<TableColumn> columns) {
  std::sort(columns.begin(), columns.end(),
            [](const TableColumn& a, const TableColumn& b) {
              int ax = a.question->box ? a.question->box->x0 : 0;
              int bx = b.question->box ? b.question->box->x0 : 0;
              if (ax != bx) return ax < bx;
              return a.question->id < b.question->id;
            });

  struct Cell {
    const TableColumn* column;
    const Entity* answer;
    Interval span;
  };
  std::vector<Cell> cells;
  for (const TableColumn& col : columns)
    for (const Entity* a : col.answers)
      cells.push_back({&col, a, {a->box->y0, a->box->y1}});

  // Transitive row clustering by vertical overlap.
  std::vector<int> row_of(cells.size(), -1);
  int rows = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (row_of[i] >= 0) continue;
    row_of[i] = rows;
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (row_of[j] >= 0) continue;
      for (std::size_t k = 0; k < cells.size(); ++k)
        if (row_of[k] == rows && cells[j].span.overlaps_half(cells[k].span)) {
          row_of[j] = rows;
          break;
        }
    }
    ++rows;
  }

  struct Row {
    std::vector<std::size_t> cell_ids;
    Interval span{1 << 30, 0};
  };
  std::vector<Row> grouped(rows);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Row& r = grouped[row_of[i]];
    r.cell_ids.push_back(i);
    r.span.lo = std::min(r.span.lo, cells[i].span.lo);
    r.span.hi = std::max(r.span.hi, cells[i].span.hi);
  }
  std::sort(grouped.begin(), grouped.end(),
            [](const Row& a, const Row& b) { return a.span.lo < b.span.lo; });

  TableRows out;
  for (Row& row : grouped) {
    // Column order within the row.
    std::sort(row.cell_ids.begin(), row.cell_ids.end(),
              [&](std::size_t a, std::size_t b) {
                auto pos = [&](std::size_t c) {
                  return std::pair<int, int>(
                      cells[c].column->question->box ? cells[c].column->question->box->x0 : 0,
                      cells[c].answer->id);
                };
                return pos(a) < pos(b);
              });
    TreeFormNode entry{NodeKind::Entry, "", {}};
    for (std::size_t c : row.cell_ids)
      entry.children.push_back(TreeFormNode::question(
          cells[c].column->question->text, cells[c].answer->text));
    out.entries.push_back(std::move(entry));
    out.spans.push_back(row.span);
  }
  return out;
}

}  // namespace

std::vector<TreeFormNode> build_table(const std::vector<TableColumn>& columns,
                                      const ConversionConfig&) {
  return build_table_rows(columns).entries;
}

namespace {

// Conversion walks the (acyclic) link graph; this carries the shared state.
struct Converter {
  const FunsdDocument& doc;
  const ConversionConfig& config;
  std::map<int, const Entity*> by_id;
  std::map<int, std::vector<int>> children;  // link adjacency, back edges removed
  std::vector<ValidationIssue> warnings;

  explicit Converter(const FunsdDocument& d, const ConversionConfig& c)
      : doc(d), config(c) {
    for (const Entity& e : doc.entities) {
      by_id[e.id] = &e;
      children[e.id];
    }
    for (const Link& l : doc.links) children[l.from].push_back(l.to);
    for (auto& [id, kids] : children) std::sort(kids.begin(), kids.end());
    break_cycles();
  }

  // DFS in entity-id order; a link closing a cycle on the current stack is
  // dropped.
  void break_cycles() {
    std::map<int, int> state;  // 0 new, 1 on stack, 2 done
    for (const Entity& e : doc.entities) dfs(e.id, state);
  }
  void dfs(int id, std::map<int, int>& state) {
    if (state[id] == 2) return;
    state[id] = 1;
    auto& kids = children[id];
    for (auto it = kids.begin(); it != kids.end();) {
      if (state[*it] == 1) {
        warnings.push_back({ValidationIssue::Severity::Warning, id,
                            "link removed to break a cycle"});
        it = kids.erase(it);
        continue;
      }
      dfs(*it, state);
      ++it;
    }
    state[id] = 2;
  }

  std::vector<const Entity*> child_entities(int id, Label label) const {
    std::vector<const Entity*> out;
    for (int c : children.at(id)) {
      const Entity* e = by_id.at(c);
      if (e->label == label) out.push_back(e);
    }
    return out;
  }

  TreeFormNode build_header(const Entity& header) {
    TreeFormNode node{NodeKind::Header, "", {}};
    if (!header.text.empty()) node.children.push_back(TreeFormNode::leaf(header.text));
    append_children(node, children.at(header.id));
    return node;
  }

  // A question that links to other questions acts as a section heading.
  TreeFormNode build_promoted_question(const Entity& q) {
    TreeFormNode node{NodeKind::Header, "", {}};
    if (!q.text.empty()) node.children.push_back(TreeFormNode::leaf(q.text));
    for (const Entity* a : child_entities(q.id, Label::Answer))
      node.children.push_back(TreeFormNode::question(q.text, a->text));
    std::vector<int> sub;
    for (int c : children.at(q.id))
      if (by_id.at(c)->label != Label::Answer) sub.push_back(c);
    append_children(node, sub);
    return node;
  }

  // Builds the child ids of one parent (or the root list) into TreeForm
  // nodes, grouping aligned multi-answer questions into tables. Children are
  // emitted in canonical kind order: value, headers, questions, entries.
  void append_children(TreeFormNode& parent, const std::vector<int>& ids) {
    std::vector<TreeFormNode> headers, questions, entries;

    struct ColumnQ {
      const Entity* question;
      std::vector<const Entity*> answers;
      Interval span;
    };
    std::vector<ColumnQ> column_qs;
    struct RowQ {
      const Entity* question;
      std::vector<const Entity*> answers;
    };
    std::vector<RowQ> row_qs;

    for (int id : ids) {
      const Entity& e = *by_id.at(id);
      switch (e.label) {
        case Label::Header:
          headers.push_back(build_header(e));
          break;
        case Label::Question: {
          if (!child_entities(e.id, Label::Question).empty()) {
            headers.push_back(build_promoted_question(e));
            break;
          }
          std::vector<const Entity*> answers = child_entities(e.id, Label::Answer);
          if (answers.empty()) {
            if (config.keep_unanswered)
              questions.push_back(
                  {NodeKind::Question, "", {TreeFormNode::leaf(e.text)}});
            break;
          }
          if (static_cast<int>(answers.size()) >= config.min_table_answers) {
            TableShape shape = detect_table(doc, e, answers, config, &warnings);
            if (shape == TableShape::Column) {
              Interval span{answers[0]->box->y0, answers[0]->box->y1};
              for (const Entity* a : answers) {
                span.lo = std::min(span.lo, a->box->y0);
                span.hi = std::max(span.hi, a->box->y1);
              }
              column_qs.push_back({&e, answers, span});
              break;
            }
            if (shape == TableShape::Row) {
              row_qs.push_back({&e, answers});
              break;
            }
          }
          // Multi-line (or single) answers: one question node per answer.
          for (const Entity* a : answers)
            questions.push_back(TreeFormNode::question(e.text, a->text));
          break;
        }
        case Label::Answer:
          // Reached only through its question parent; nothing to do here.
          break;
        case Label::Other:
          break;
      }
    }

    // Group columns with overlapping vertical spans into tables.
    std::vector<int> table_of(column_qs.size(), -1);
    int tables = 0;
    for (std::size_t i = 0; i < column_qs.size(); ++i) {
      if (table_of[i] >= 0) continue;
      table_of[i] = tables;
      for (std::size_t j = i + 1; j < column_qs.size(); ++j) {
        if (table_of[j] >= 0) continue;
        for (std::size_t k = 0; k < column_qs.size(); ++k) {
          if (table_of[k] != tables) continue;
          Interval a = column_qs[j].span, b = column_qs[k].span;
          if (std::min(a.hi, b.hi) >= std::max(a.lo, b.lo)) {
            table_of[j] = tables;
            break;
          }
        }
      }
      ++tables;
    }

    for (int t = 0; t < tables; ++t) {
      std::vector<TableColumn> columns;
      for (std::size_t i = 0; i < column_qs.size(); ++i)
        if (table_of[i] == t)
          columns.push_back({column_qs[i].question, column_qs[i].answers});
      TableRows table = build_table_rows(std::move(columns));

      // Row-aligned questions provide entry names for matching rows.
      for (auto it = row_qs.begin(); it != row_qs.end();) {
        bool used = false;
        for (const Entity* a : it->answers) {
          Interval span{a->box->y0, a->box->y1};
          for (std::size_t r = 0; r < table.entries.size(); ++r) {
            if (!span.overlaps_half(table.spans[r])) continue;
            if (!table.entries[r].title_leaf() && !a->text.empty()) {
              table.entries[r].children.insert(table.entries[r].children.begin(),
                                               TreeFormNode::leaf(a->text));
              used = true;
            }
            break;
          }
        }
        it = used ? row_qs.erase(it) : ++it;
      }
      for (TreeFormNode& entry : table.entries) entries.push_back(std::move(entry));
    }

    // Row-aligned questions with no column table: one entry per answer.
    for (const RowQ& rq : row_qs)
      for (const Entity* a : rq.answers) {
        TreeFormNode entry{NodeKind::Entry, "", {}};
        entry.children.push_back(TreeFormNode::question(rq.question->text, a->text));
        entries.push_back(std::move(entry));
      }

    for (auto& n : headers) parent.children.push_back(std::move(n));
    for (auto& n : questions) parent.children.push_back(std::move(n));
    for (auto& n : entries) parent.children.push_back(std::move(n));
  }
};

}  // namespace

TreeFormDoc convert(const FunsdDocument& input, const ConversionConfig& config) {
  auto [clean, warnings] = discard_incomplete(input, config.keep_unanswered);
  Converter conv(clean, config);

  std::set<int> has_parent;
  for (const auto& [id, kids] : conv.children)
    for (int c : kids) has_parent.insert(c);

  std::vector<int> roots;
  for (const Entity& e : clean.entities)
    if (!has_parent.count(e.id)) roots.push_back(e.id);

  std::optional<int> title = select_form_title(clean);
  TreeFormDoc doc;
  if (title && has_parent.count(*title) == 0) {
    // Every other top-level structure nests under the form title.
    const Entity& te = *conv.by_id.at(*title);
    TreeFormNode root = conv.build_header(te);
    std::vector<int> adopted;
    for (int r : roots)
      if (r != *title) adopted.push_back(r);
    TreeFormNode extra{NodeKind::Header, "", {}};
    conv.append_children(extra, adopted);
    // Merge while keeping canonical kind order.
    std::vector<TreeFormNode> merged;
    auto take = [&](std::vector<TreeFormNode>& src, NodeKind kind) {
      for (TreeFormNode& n : src)
        if (n.kind == kind) merged.push_back(std::move(n));
    };
    for (NodeKind kind : {NodeKind::Value, NodeKind::Header, NodeKind::Question,
                          NodeKind::Entry}) {
      take(root.children, kind);
      take(extra.children, kind);
    }
    root.children = std::move(merged);
    doc.roots.push_back(std::move(root));
  } else {
    TreeFormNode holder{NodeKind::Header, "", {}};
    conv.append_children(holder, roots);
    doc.roots = std::move(holder.children);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Serialization (non-concise, kind-array schema).

namespace {

json node_to_json(const TreeFormNode& node);

void append_kind_arrays(json& j, const TreeFormNode& node) {
  json headers = json::array(), questions = json::array(), entries = json::array();
  for (const TreeFormNode& c : node.children) {
    switch (c.kind) {
      case NodeKind::Header: headers.push_back(node_to_json(c)); break;
      case NodeKind::Question: questions.push_back(node_to_json(c)); break;
      case NodeKind::Entry: entries.push_back(node_to_json(c)); break;
      default: break;
    }
  }
  if (!headers.empty()) j["header"] = std::move(headers);
  if (!questions.empty()) j["question"] = std::move(questions);
  if (!entries.empty()) j["entry"] = std::move(entries);
}

json node_to_json(const TreeFormNode& node) {
  json j = json::object();
  if (node.kind == NodeKind::Question) {
    const TreeFormNode* q = node.title_leaf();
    j["value"] = q ? q->value : "";
    for (const TreeFormNode& c : node.children)
      if (c.kind == NodeKind::Answer && c.title_leaf())
        j["answer"] = c.title_leaf()->value;
    return j;
  }
  if (const TreeFormNode* title = node.title_leaf()) j["value"] = title->value;
  append_kind_arrays(j, node);
  return j;
}

TreeFormNode node_from_json(const json& j, NodeKind kind, const std::string& path);

void parse_kind_arrays(const json& j, TreeFormNode& node, const std::string& path) {
  struct KindKey {
    const char* key;
    NodeKind kind;
  };
  for (const KindKey& k : {KindKey{"header", NodeKind::Header},
                           KindKey{"question", NodeKind::Question},
                           KindKey{"entry", NodeKind::Entry}}) {
    if (!j.contains(k.key)) continue;
    const json& arr = j[k.key];
    std::string kpath = path + "/" + k.key;
    if (arr.is_object()) {  // tolerate a single node object
      node.children.push_back(node_from_json(arr, k.kind, kpath));
      continue;
    }
    if (!arr.is_array())
      throw SchemaError(std::string("`") + k.key + "` must be an array", kpath);
    for (std::size_t i = 0; i < arr.size(); ++i)
      node.children.push_back(
          node_from_json(arr[i], k.kind, kpath + "/" + std::to_string(i)));
  }
}

TreeFormNode node_from_json(const json& j, NodeKind kind, const std::string& path) {
  if (!j.is_object()) throw SchemaError("node must be an object", path);
  TreeFormNode node{kind, "", {}};
  if (j.contains("value")) {
    if (!j["value"].is_string())
      throw SchemaError("`value` must be a string", path + "/value");
    std::string v = j["value"].get<std::string>();
    if (!v.empty()) node.children.push_back(TreeFormNode::leaf(std::move(v)));
  }
  if (kind == NodeKind::Question) {
    if (j.contains("answer")) {
      if (!j["answer"].is_string())
        throw SchemaError("`answer` must be a string", path + "/answer");
      TreeFormNode answer{NodeKind::Answer, "", {}};
      answer.children.push_back(TreeFormNode::leaf(j["answer"].get<std::string>()));
      node.children.push_back(std::move(answer));
    }
    return node;
  }
  parse_kind_arrays(j, node, path);
  return node;
}

}  // namespace

// ---------------------------------------------------------------------------
// Concise form (nested-object schema).

namespace {

using ojson = nlohmann::ordered_json;

// Duplicate keys become arrays, in insertion order.
void insert_concise(ojson& obj, const std::string& key, ojson value) {
  if (!obj.contains(key)) {
    obj[key] = std::move(value);
    return;
  }
  if (!obj[key].is_array()) {
    ojson arr = ojson::array();
    arr.push_back(std::move(obj[key]));
    obj[key] = std::move(arr);
  }
  obj[key].push_back(std::move(value));
}

ojson concise_value(const TreeFormNode& node);

ojson concise_children(const TreeFormNode& node) {
  ojson obj = ojson::object();
  for (const TreeFormNode& c : node.children) {
    switch (c.kind) {
      case NodeKind::Header: {
        const TreeFormNode* t = c.title_leaf();
        insert_concise(obj, t ? t->value : "", concise_children(c));
        break;
      }
      case NodeKind::Question: {
        const TreeFormNode* q = c.title_leaf();
        insert_concise(obj, q ? q->value : "", concise_value(c));
        break;
      }
      case NodeKind::Entry:
        insert_concise(obj, "entry", concise_children(c));
        break;
      case NodeKind::Value:
        if (node.kind == NodeKind::Entry)  // entry name
          insert_concise(obj, "", ojson(c.value));
        break;
      default:
        break;
    }
  }
  return obj;
}

ojson concise_value(const TreeFormNode& question) {
  for (const TreeFormNode& c : question.children)
    if (c.kind == NodeKind::Answer && c.title_leaf())
      return ojson(c.title_leaf()->value);
  return ojson();  // unanswered question
}

std::vector<TreeFormNode> concise_nodes(const std::string& key, const ojson& value,
                                        const std::string& path);

TreeFormNode concise_section(const std::string& title, const ojson& obj,
                             NodeKind kind, const std::string& path) {
  TreeFormNode node{kind, "", {}};
  if (!title.empty()) node.children.push_back(TreeFormNode::leaf(title));
  for (const auto& [key, value] : obj.items()) {
    if (kind == NodeKind::Entry && key.empty() && value.is_string()) {
      // Reserved: the entry's own name.
      node.children.insert(node.children.begin(),
                           TreeFormNode::leaf(value.get<std::string>()));
      continue;
    }
    for (TreeFormNode& c : concise_nodes(key, value, path + "/" + key))
      node.children.push_back(std::move(c));
  }
  if (kind == NodeKind::Entry) {
    for (const TreeFormNode& c : node.children)
      if (c.kind != NodeKind::Question && c.kind != NodeKind::Value)
        throw SchemaError("entries may only contain question-answer pairs", path);
  }
  return node;
}

std::vector<TreeFormNode> concise_nodes(const std::string& key, const ojson& value,
                                        const std::string& path) {
  std::vector<TreeFormNode> out;
  if (value.is_array()) {  // collision array: several nodes share the key
    for (std::size_t i = 0; i < value.size(); ++i)
      for (TreeFormNode& n :
           concise_nodes(key, value[i], path + "/" + std::to_string(i)))
        out.push_back(std::move(n));
    return out;
  }
  if (key == "entry" && value.is_object()) {
    out.push_back(concise_section("", value, NodeKind::Entry, path));
    return out;
  }
  if (value.is_string()) {
    out.push_back(TreeFormNode::question(key, value.get<std::string>()));
    return out;
  }
  if (value.is_null()) {
    out.push_back({NodeKind::Question, "", {TreeFormNode::leaf(key)}});
    return out;
  }
  if (value.is_object()) {
    out.push_back(concise_section(key, value, NodeKind::Header, path));
    return out;
  }
  throw SchemaError("expected a string, object, array, or null", path);
}

}  // namespace

nlohmann::ordered_json to_concise(const TreeFormDoc& doc) {
  TreeFormNode holder{NodeKind::Header, "", doc.roots};
  return concise_children(holder);
}

std::string serialize_treeform(const TreeFormDoc& doc, bool concise) {
  if (concise) return to_concise(doc).dump(2) + "\n";
  json j = json::object();
  TreeFormNode holder{NodeKind::Header, "", doc.roots};
  append_kind_arrays(j, holder);
  return j.dump(2) + "\n";
}

TreeFormDoc parse_treeform(const std::string& raw, bool concise) {
  if (concise) {
    // Parsed order-preserving: sibling order is significant here.
    ojson j;
    try {
      j = ojson::parse(raw);
    } catch (const ojson::parse_error& err) {
      throw ParseError(err.what(), err.byte);
    }
    if (!j.is_object()) throw SchemaError("document must be a JSON object");
    TreeFormDoc doc;
    for (const auto& [key, value] : j.items())
      for (TreeFormNode& n : concise_nodes(key, value, "/" + key))
        doc.roots.push_back(std::move(n));
    return doc;
  }
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error& err) {
    throw ParseError(err.what(), err.byte);
  }
  if (!j.is_object()) throw SchemaError("document must be a JSON object");
  TreeFormDoc doc;
  TreeFormNode holder{NodeKind::Header, "", {}};
  parse_kind_arrays(j, holder, "");
  doc.roots = std::move(holder.children);
  return doc;
}

namespace {

void collect_leaves(const TreeFormNode& node, std::vector<std::string>& out) {
  if (node.kind == NodeKind::Value) out.push_back(node.value);
  for (const TreeFormNode& c : node.children) collect_leaves(c, out);
}

std::size_t count_nodes(const TreeFormNode& node) {
  std::size_t n = 1;
  for (const TreeFormNode& c : node.children) n += count_nodes(c);
  return n;
}

}  // namespace

std::vector<std::string> leaf_texts(const TreeFormDoc& doc) {
  std::vector<std::string> out;
  for (const TreeFormNode& root : doc.roots) collect_leaves(root, out);
  return out;
}

std::size_t node_count(const TreeFormDoc& doc) {
  std::size_t n = 0;
  for (const TreeFormNode& root : doc.roots) n += count_nodes(root);
  return n;
}

}  // namespace treeform
