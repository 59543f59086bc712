#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "treeform/funsd.hpp"
#include "treeform/treeform.hpp"

namespace treeform {

struct RepairReport {
  int discarded_paths = 0;
  int merged_leaves = 0;
  int removed_entities = 0;
  std::vector<std::string> notes;
};

// Salvages whatever valid TreeForm structure a raw JSON value contains;
// everything else is dropped and counted. Never throws.
std::pair<TreeFormDoc, RepairReport> repair_treeform(const nlohmann::json& raw);

struct DedupConfig {
  // Similarity threshold: siblings merge when 1 - distance > threshold.
  // The literal gate flips this to merging when distance > threshold.
  double threshold = 0.6;
  bool literal_distance_gate = false;
};

// Removes near-duplicate sibling subtrees, keeping the one with the longest
// text (ties: the earlier sibling).
std::pair<TreeFormDoc, RepairReport> dedup_leaves(const TreeFormDoc& doc,
                                                  const DedupConfig& config = {});

// Merges near-duplicate entities whose text exceeds `min_len` characters
// and shares a label; links re-target the surviving entity.
std::pair<FunsdDocument, RepairReport> dedup_long_entities(
    const FunsdDocument& doc, int min_len = 20, const DedupConfig& config = {});

}  // namespace treeform
