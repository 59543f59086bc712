#include "treeform/evaluate.hpp"

#include <cstdint>

#include "treeform/aggregate.hpp"
#include "treeform/ted.hpp"

namespace treeform {

DocScores evaluate_pair(const FunsdDocument& pred, const FunsdDocument& gt,
                        const EvalOptions& options) {
  DocScores scores;
  auto wants = [&](const char* name) { return options.metrics.count(name) > 0; };

  AggregatedTree pred_tree = build_aggregated_tree(pred);
  AggregatedTree gt_tree = build_aggregated_tree(gt);
  Alignment alignment =
      greedy_align(pred_tree.nodes, gt_tree.nodes, options.alignment_threshold);

  if (wants("labeling_f1"))
    scores.labeling_f1 = 100.0 * labeling_f1(pred, gt, alignment).f1();
  if (wants("linking_f1"))
    scores.linking_f1 = 100.0 * linking_f1(pred, gt, alignment).f1();
  if (wants("tree_f1"))
    scores.tree_f1 = 100.0 * tree_f1(pred_tree, gt_tree, alignment).f1();
  if (wants("naa")) scores.naa = naa(alignment);

  if (wants("ganted")) {
    TreeFormDoc pred_tf = convert(pred, options.conversion);
    TreeFormDoc gt_tf = convert(gt, options.conversion);
    if (gt_tf.empty())
      scores.ganted = pred_tf.empty() ? 0.0
                                      : 100.0 * static_cast<double>(
                                                    embedded_size(pred_tf));
    else
      scores.ganted = ganted(pred_tf, gt_tf);
  }
  return scores;
}

std::vector<DocScores> evaluate_corpus(const std::vector<DocPair>& pairs,
                                       const EvalOptions& options) {
  std::vector<DocScores> out(pairs.size());
  const std::int64_t n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = evaluate_pair(pairs[i].pred, pairs[i].gt, options);
    out[i].id = pairs[i].id;
  }
  return out;
}

}  // namespace treeform
