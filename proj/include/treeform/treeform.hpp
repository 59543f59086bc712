#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "treeform/funsd.hpp"

namespace treeform {

enum class NodeKind { Header, Question, Answer, Entry, Value };

struct TreeFormNode {
  NodeKind kind = NodeKind::Value;
  std::string value;  // Value nodes only
  std::vector<TreeFormNode> children;

  bool operator==(const TreeFormNode&) const = default;

  // First Value child (a header title, question text, or entry name).
  const TreeFormNode* title_leaf() const;

  static TreeFormNode leaf(std::string text);
  static TreeFormNode question(std::string q, std::string a);
};

struct TreeFormDoc {
  std::vector<TreeFormNode> roots;
  bool operator==(const TreeFormDoc&) const = default;
  bool empty() const { return roots.empty(); }
};

struct ConversionConfig {
  double column_epsilon_fraction = 0.01;  // in (0, 0.2]
  int min_table_answers = 2;
  bool keep_unanswered = false;
};

// Structural sanity of a node; the empty message means valid.
// `keep_unanswered` permits questions without an answer child.
std::optional<std::string> check_invariants(const TreeFormNode& node,
                                            bool keep_unanswered = false);
std::optional<std::string> check_invariants(const TreeFormDoc& doc,
                                            bool keep_unanswered = false);

// Removes `other` entities, unanswered questions, and unprompted answers,
// with one warning per removal.
std::pair<FunsdDocument, std::vector<ValidationIssue>> discard_incomplete(
    const FunsdDocument& doc, bool keep_unanswered = false);

// The non-nested header with the smallest y0 (ties: x0, then id). Headers
// without a bounding box are ineligible.
std::optional<int> select_form_title(const FunsdDocument& doc);

enum class TableShape { Column, Row, Multiline };

// Multiple answers form a column (row) when their x0 (y0) values all lie
// within epsilon of the median; column wins when both hold.
TableShape detect_table(const FunsdDocument& doc, const Entity& question,
                        const std::vector<const Entity*>& answers,
                        const ConversionConfig& config,
                        std::vector<ValidationIssue>* warnings = nullptr);

struct TableColumn {
  const Entity* question = nullptr;
  std::vector<const Entity*> answers;
};

// Groups cells into rows by vertical overlap (>= 50% of the smaller height)
// and emits one Entry node per row, cells in column order. Ragged rows keep
// whatever cells they have.
std::vector<TreeFormNode> build_table(const std::vector<TableColumn>& columns,
                                      const ConversionConfig& config);

TreeFormDoc convert(const FunsdDocument& doc, const ConversionConfig& config = {});

nlohmann::ordered_json to_concise(const TreeFormDoc& doc);

std::string serialize_treeform(const TreeFormDoc& doc, bool concise = false);
TreeFormDoc parse_treeform(const std::string& raw, bool concise = false);

// All leaf texts in depth-first order.
std::vector<std::string> leaf_texts(const TreeFormDoc& doc);
std::size_t node_count(const TreeFormDoc& doc);

}  // namespace treeform
