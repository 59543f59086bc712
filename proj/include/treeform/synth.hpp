#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treeform/funsd.hpp"
#include "treeform/treeform.hpp"

namespace treeform {

struct IntRange {
  int lo = 1;
  int hi = 1;
};

// Word list used when a config does not supply its own.
const std::vector<std::string>& default_vocabulary();

struct SynthConfig {
  std::uint64_t seed = 0;
  IntRange sections{1, 3};
  IntRange qa_per_section{1, 4};
  double table_probability = 0.3;
  IntRange table_rows{2, 4};
  IntRange table_cols{1, 3};
  std::vector<std::string> vocabulary = default_vocabulary();
  int page_width = 1000;
  int page_height = 1000;
};

struct NoiseSpec {
  double label_flip_rate = 0.0;
  double link_drop_rate = 0.0;
  double char_edit_rate = 0.0;
  double entity_split_rate = 0.0;
  std::uint64_t seed = 0;
};

struct SynthForm {
  TreeFormDoc treeform;  // exact ground truth of the annotation below
  FunsdDocument funsd;
};

// Deterministic given the config; the FUNSD layout is constructed so that
// convert() reproduces `treeform` exactly.
SynthForm generate(const SynthConfig& config);

// Per-corpus generation with per-document seeds (seed XOR index).
std::vector<SynthForm> generate_corpus(const SynthConfig& config, int count);

// Applies each noise operator per element with a stable per-element draw, so
// raising a rate only grows the set of perturbed elements.
FunsdDocument perturb(const FunsdDocument& doc, const NoiseSpec& noise);

}  // namespace treeform
