#pragma once

#include <functional>
#include <string>
#include <vector>

#include "treeform/treeform.hpp"

namespace treeform {

// Ordered labeled tree; labels are leaf text or a reserved kind token.
struct LabeledTree {
  std::string label;
  std::vector<LabeledTree> children;
  bool operator==(const LabeledTree&) const = default;
};

inline constexpr const char* kRootToken = "<root>";
inline constexpr const char* kHeaderToken = "<header>";
inline constexpr const char* kQuestionToken = "<question>";
inline constexpr const char* kAnswerToken = "<answer>";
inline constexpr const char* kEntryToken = "<entry>";

bool is_kind_token(const std::string& label);

struct EditCosts {
  double insert_cost = 1.0;
  double delete_cost = 1.0;
  // Kind tokens rename at 0 (equal) or 1 (anything else); leaf text pairs
  // rename at their normalized Levenshtein distance.
  double rename(const std::string& a, const std::string& b) const;
};

std::size_t tree_size(const LabeledTree& t);

// Zhang-Shasha ordered-tree edit distance. Empty trees are encoded by a
// size-zero forest: use `tree_edit_distance_opt` with nullptrs.
double tree_edit_distance(const LabeledTree& a, const LabeledTree& b,
                          const EditCosts& costs = {});
double tree_edit_distance_opt(const LabeledTree* a, const LabeledTree* b,
                              const EditCosts& costs = {});

// TreeForm document as a labeled tree under a virtual "<root>". An empty
// document embeds to no tree at all.
// Question-answer pairs embed as three nodes: the question kind node with a
// question-text leaf and an answer-text leaf.
std::optional<LabeledTree> embed(const TreeFormDoc& doc);
std::size_t embedded_size(const TreeFormDoc& doc);

// tree_edit_distance / |gt nodes|, x100. Throws std::invalid_argument on an
// empty ground truth.
double nted(const std::optional<LabeledTree>& pred,
            const std::optional<LabeledTree>& gt, const EditCosts& costs = {});

// Reorders pred's sibling lists top-down to match gt: children are greedily
// paired by label rename cost (subtree leaf text breaks ties, then gt
// order), matched children take their partner's position, unmatched ones
// keep their relative order at the end. No node is added, removed, or
// relabeled.
LabeledTree greedy_sibling_align(const LabeledTree& pred, const LabeledTree& gt);

double ganted(const TreeFormDoc& pred, const TreeFormDoc& gt,
              const EditCosts& costs = {});

}  // namespace treeform
