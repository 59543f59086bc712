#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace treeform {

// Decodes UTF-8 into Unicode scalar values. Invalid bytes are passed
// through as their byte value so that distances stay defined on any input.
std::u32string decode_utf8(std::string_view s);

std::size_t codepoint_count(std::string_view s);

// Unit-cost edit distance over Unicode scalar values.
std::size_t levenshtein(std::string_view a, std::string_view b);

// levenshtein(a, b) / max(|a|, |b|); 0 when both strings are empty,
// 1 when exactly one is empty.
double normalized_levenshtein(std::string_view a, std::string_view b);

// Row-major |pred| x |gt| matrix of normalized distances.
std::vector<double> distance_matrix_serial(const std::vector<std::string>& pred,
                                           const std::vector<std::string>& gt);
// OpenMP variant; identical output.
std::vector<double> distance_matrix_parallel(const std::vector<std::string>& pred,
                                             const std::vector<std::string>& gt);

struct Alignment {
  struct Pair {
    int pred = 0;
    int gt = 0;
    double distance = 0.0;
    bool operator==(const Pair&) const = default;
  };
  std::vector<Pair> pairs;          // in greedy selection order
  std::vector<int> unaligned_pred;  // ascending
  std::vector<int> unaligned_gt;    // ascending
  double threshold = 0.4;

  // gt index for an aligned pred index, or -1.
  int gt_for_pred(int pred_index) const;
  int pred_for_gt(int gt_index) const;
};

// Repeatedly pairs the globally minimum-distance (pred, gt) pair with
// distance < threshold; ties broken by smallest gt index, then smallest
// pred index.
Alignment greedy_align(const std::vector<std::string>& pred,
                       const std::vector<std::string>& gt,
                       double threshold = 0.4);

// Mean distance over aligned pairs with penalty 1 per unaligned node on
// either side; 0 when everything is empty.
double naa(const Alignment& alignment);

}  // namespace treeform
