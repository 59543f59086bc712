#include "treeform/ted.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "treeform/align.hpp"

namespace treeform {

bool is_kind_token(const std::string& label) {
  return label == kRootToken || label == kHeaderToken || label == kQuestionToken ||
         label == kAnswerToken || label == kEntryToken;
}

double EditCosts::rename(const std::string& a, const std::string& b) const {
  if (a == b) return 0.0;
  if (is_kind_token(a) || is_kind_token(b)) return 1.0;
  return normalized_levenshtein(a, b);
}

std::size_t tree_size(const LabeledTree& t) {
  std::size_t n = 1;
  for (const LabeledTree& c : t.children) n += tree_size(c);
  return n;
}

namespace {

// Zhang-Shasha preprocessing: postorder labels, leftmost-leaf indices, and
// keyroots.
struct ZsTree {
  std::vector<const std::string*> labels;  // postorder
  std::vector<int> lml;                    // leftmost leaf of subtree, postorder
  std::vector<int> keyroots;

  explicit ZsTree(const LabeledTree& root) {
    walk(root);
    std::vector<bool> seen(labels.size(), false);
    for (int i = static_cast<int>(labels.size()) - 1; i >= 0; --i) {
      if (!seen[lml[i]]) {
        keyroots.push_back(i);
        seen[lml[i]] = true;
      }
    }
    std::sort(keyroots.begin(), keyroots.end());
  }

  int walk(const LabeledTree& node) {
    int first_leaf = -1;
    for (const LabeledTree& c : node.children) {
      int l = walk(c);
      if (first_leaf < 0) first_leaf = l;
    }
    int idx = static_cast<int>(labels.size());
    if (first_leaf < 0) first_leaf = idx;
    labels.push_back(&node.label);
    lml.push_back(first_leaf);
    return first_leaf;
  }
};

}  // namespace

double tree_edit_distance_opt(const LabeledTree* a, const LabeledTree* b,
                              const EditCosts& costs) {
  if (!a && !b) return 0.0;
  if (!a) return costs.insert_cost * static_cast<double>(tree_size(*b));
  if (!b) return costs.delete_cost * static_cast<double>(tree_size(*a));

  ZsTree ta(*a), tb(*b);
  const int n = static_cast<int>(ta.labels.size());
  const int m = static_cast<int>(tb.labels.size());
  std::vector<std::vector<double>> treedist(n, std::vector<double>(m, 0.0));
  std::vector<std::vector<double>> fd(n + 2, std::vector<double>(m + 2, 0.0));

  for (int ki : ta.keyroots) {
    for (int kj : tb.keyroots) {
      const int li = ta.lml[ki], lj = tb.lml[kj];
      fd[li][lj] = 0.0;
      for (int i = li; i <= ki; ++i)
        fd[i + 1][lj] = fd[i][lj] + costs.delete_cost;
      for (int j = lj; j <= kj; ++j)
        fd[li][j + 1] = fd[li][j] + costs.insert_cost;
      for (int i = li; i <= ki; ++i) {
        for (int j = lj; j <= kj; ++j) {
          if (ta.lml[i] == li && tb.lml[j] == lj) {
            double rename = costs.rename(*ta.labels[i], *tb.labels[j]);
            fd[i + 1][j + 1] = std::min({fd[i][j + 1] + costs.delete_cost,
                                         fd[i + 1][j] + costs.insert_cost,
                                         fd[i][j] + rename});
            treedist[i][j] = fd[i + 1][j + 1];
          } else {
            fd[i + 1][j + 1] =
                std::min({fd[i][j + 1] + costs.delete_cost,
                          fd[i + 1][j] + costs.insert_cost,
                          fd[ta.lml[i]][tb.lml[j]] + treedist[i][j]});
          }
        }
      }
    }
  }
  return treedist[n - 1][m - 1];
}

double tree_edit_distance(const LabeledTree& a, const LabeledTree& b,
                          const EditCosts& costs) {
  return tree_edit_distance_opt(&a, &b, costs);
}

namespace {

std::string escape_leaf(const std::string& text) {
  if (is_kind_token(text) || (!text.empty() && text[0] == '\\'))
    return "\\" + text;
  return text;
}

LabeledTree embed_node(const TreeFormNode& node) {
  switch (node.kind) {
    case NodeKind::Value:
      return {escape_leaf(node.value), {}};
    case NodeKind::Question: {
      // Question and answer text as two leaves under the question node.
      LabeledTree t{kQuestionToken, {}};
      for (const TreeFormNode& c : node.children) {
        if (c.kind == NodeKind::Value)
          t.children.push_back({escape_leaf(c.value), {}});
        else if (c.kind == NodeKind::Answer && c.title_leaf())
          t.children.push_back({escape_leaf(c.title_leaf()->value), {}});
      }
      return t;
    }
    case NodeKind::Answer: {
      LabeledTree t{kAnswerToken, {}};
      for (const TreeFormNode& c : node.children) t.children.push_back(embed_node(c));
      return t;
    }
    case NodeKind::Entry:
    case NodeKind::Header: {
      LabeledTree t{node.kind == NodeKind::Entry ? kEntryToken : kHeaderToken, {}};
      for (const TreeFormNode& c : node.children) t.children.push_back(embed_node(c));
      return t;
    }
  }
  return {"", {}};
}

}  // namespace

std::optional<LabeledTree> embed(const TreeFormDoc& doc) {
  if (doc.roots.empty()) return std::nullopt;
  LabeledTree root{kRootToken, {}};
  for (const TreeFormNode& r : doc.roots) root.children.push_back(embed_node(r));
  return root;
}

std::size_t embedded_size(const TreeFormDoc& doc) {
  auto t = embed(doc);
  return t ? tree_size(*t) : 0;
}

double nted(const std::optional<LabeledTree>& pred,
            const std::optional<LabeledTree>& gt, const EditCosts& costs) {
  if (!gt) throw std::invalid_argument("nted: empty ground truth");
  double dist = tree_edit_distance_opt(pred ? &*pred : nullptr, &*gt, costs);
  return 100.0 * dist / static_cast<double>(tree_size(*gt));
}

namespace {

void collect_leaf_text(const LabeledTree& t, std::vector<std::string>& out) {
  if (t.children.empty()) out.push_back(t.label);
  for (const LabeledTree& c : t.children) collect_leaf_text(c, out);
}

// Sorted so the text is invariant under sibling reordering; otherwise a
// shuffled subtree would not tie with its own ground-truth counterpart.
std::string subtree_text(const LabeledTree& t) {
  std::vector<std::string> leaves;
  collect_leaf_text(t, leaves);
  std::sort(leaves.begin(), leaves.end());
  std::string out;
  for (const std::string& leaf : leaves) {
    if (!out.empty()) out.push_back('\n');
    out += leaf;
  }
  return out;
}

void align_children(LabeledTree& pred, const LabeledTree& gt) {
  const std::size_t np = pred.children.size(), ng = gt.children.size();
  if (np == 0 || ng == 0) return;

  EditCosts costs;
  std::vector<std::string> pred_text(np), gt_text(ng);
  for (std::size_t i = 0; i < np; ++i) pred_text[i] = subtree_text(pred.children[i]);
  for (std::size_t j = 0; j < ng; ++j) gt_text[j] = subtree_text(gt.children[j]);

  // Greedy matching: label rename cost first, whole-subtree text distance as
  // the discriminator between same-kind siblings, then gt order.
  std::vector<int> partner_of_gt(ng, -1);
  std::vector<bool> pred_used(np, false);
  for (std::size_t round = 0; round < std::min(np, ng); ++round) {
    double best_primary = std::numeric_limits<double>::infinity();
    double best_secondary = 0.0;
    int best_p = -1, best_g = -1;
    for (std::size_t g = 0; g < ng; ++g) {
      if (partner_of_gt[g] >= 0) continue;
      for (std::size_t p = 0; p < np; ++p) {
        if (pred_used[p]) continue;
        double primary = costs.rename(pred.children[p].label, gt.children[g].label);
        double secondary = normalized_levenshtein(pred_text[p], gt_text[g]);
        if (primary < best_primary - 1e-12 ||
            (std::abs(primary - best_primary) <= 1e-12 &&
             secondary < best_secondary - 1e-12)) {
          best_primary = primary;
          best_secondary = secondary;
          best_p = static_cast<int>(p);
          best_g = static_cast<int>(g);
        }
      }
    }
    if (best_p < 0) break;
    partner_of_gt[best_g] = best_p;
    pred_used[best_p] = true;
  }

  std::vector<LabeledTree> reordered;
  reordered.reserve(np);
  for (std::size_t g = 0; g < ng; ++g) {
    if (partner_of_gt[g] < 0) continue;
    LabeledTree child = std::move(pred.children[partner_of_gt[g]]);
    align_children(child, gt.children[g]);
    reordered.push_back(std::move(child));
  }
  for (std::size_t p = 0; p < np; ++p)
    if (!pred_used[p]) reordered.push_back(std::move(pred.children[p]));
  pred.children = std::move(reordered);
}

}  // namespace

LabeledTree greedy_sibling_align(const LabeledTree& pred, const LabeledTree& gt) {
  LabeledTree out = pred;
  align_children(out, gt);
  return out;
}

double ganted(const TreeFormDoc& pred, const TreeFormDoc& gt,
              const EditCosts& costs) {
  std::optional<LabeledTree> ep = embed(pred);
  std::optional<LabeledTree> eg = embed(gt);
  if (!eg) throw std::invalid_argument("ganted: empty ground truth");
  if (ep) ep = greedy_sibling_align(*ep, *eg);
  return nted(ep, eg, costs);
}

}  // namespace treeform
