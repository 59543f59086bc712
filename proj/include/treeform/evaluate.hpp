#pragma once

#include <set>
#include <string>

#include "treeform/metrics.hpp"
#include "treeform/treeform.hpp"

namespace treeform {

inline const std::set<std::string> kAllMetrics = {
    "labeling_f1", "linking_f1", "tree_f1", "naa", "ganted"};

struct EvalOptions {
  std::set<std::string> metrics = kAllMetrics;
  double alignment_threshold = 0.4;
  ConversionConfig conversion;
};

// All selected metrics for one (prediction, ground truth) pair. Metrics not
// selected are left unset; the TreeForm conversion runs only when ganted is
// requested.
DocScores evaluate_pair(const FunsdDocument& pred, const FunsdDocument& gt,
                        const EvalOptions& options = {});

struct DocPair {
  std::string id;
  FunsdDocument pred;  // empty document for a missing prediction
  FunsdDocument gt;
};

// Per-document scores in input order; OpenMP-parallel across documents.
std::vector<DocScores> evaluate_corpus(const std::vector<DocPair>& pairs,
                                       const EvalOptions& options = {});

}  // namespace treeform
