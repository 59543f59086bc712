#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeform/aggregate.hpp"
#include "treeform/align.hpp"
#include "treeform/funsd.hpp"

namespace treeform {

struct PRF {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;

  // Empty-side convention: a score with a zero denominator is 1.0 when the
  // opposite side is empty too, else 0.0.
  double precision() const;
  double recall() const;
  double f1() const;
  bool operator==(const PRF&) const = default;
};

// Labeled-edge precision/recall over aggregated trees. Predicted node ids
// are mapped to ground-truth ids through the alignment (root maps to root);
// edges touching unaligned nodes cannot match.
PRF tree_f1(const AggregatedTree& pred, const AggregatedTree& gt,
            const Alignment& alignment);

// Entity-level label agreement over aligned pairs. Alignment indices refer
// to non-`other` entities in document order; `other` is excluded on both
// sides.
PRF labeling_f1(const FunsdDocument& pred, const FunsdDocument& gt,
                const Alignment& alignment);

// Directed links between non-`other` entities, mapped through the alignment.
PRF linking_f1(const FunsdDocument& pred, const FunsdDocument& gt,
               const Alignment& alignment);

enum class Aggregation { Mean, Median };

// Median of an even count is the mean of the two middle values.
double aggregate_values(std::vector<double> values, Aggregation mode);

struct DocScores {
  std::string id;
  std::optional<double> labeling_f1;  // x100
  std::optional<double> linking_f1;   // x100
  std::optional<double> tree_f1;      // x100
  std::optional<double> naa;          // [0, 1]
  std::optional<double> ganted;       // x100
};

struct MetricReport {
  std::vector<DocScores> per_document;
  DocScores corpus;
  Aggregation aggregation = Aggregation::Median;
};

// Throws std::invalid_argument on an empty corpus.
MetricReport aggregate_report(std::vector<DocScores> per_document,
                              Aggregation mode);

// Table-style formatting: F1 and GAnTED one decimal, NAA two decimals.
std::string report_to_json(const MetricReport& report);
std::string report_to_tsv(const MetricReport& report);

}  // namespace treeform
