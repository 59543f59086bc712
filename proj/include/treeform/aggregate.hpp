#pragma once

#include <string>
#include <vector>

#include "treeform/funsd.hpp"

namespace treeform {

// Parent sentinel for the dummy root.
inline constexpr int kRoot = -1;

// Node texts plus labeled parent->child edges from a dummy root. Node ids
// index `nodes`; edge labels equal the child entity's label.
struct AggregatedTree {
  struct Edge {
    int parent = kRoot;  // kRoot or node id
    int child = 0;
    Label label = Label::Other;
    auto operator<=>(const Edge&) const = default;
  };
  std::vector<std::string> nodes;
  std::vector<Edge> edges;  // sorted by (parent, child)

  bool operator==(const AggregatedTree&) const = default;
};

// One node per non-`other` entity in entity order; one edge per link with
// both endpoints non-`other`; entities without an incoming link get an
// edge from the dummy root. Dangling links are skipped.
AggregatedTree build_aggregated_tree(const FunsdDocument& doc);

// {"nodes": [...], "edges": [[parent, child, label], ...]} with root = -1
// and edges in (parent, child) order.
std::string serialize_aggregated(const AggregatedTree& tree);

// Accepts edges printed in either (parent, child) or (child, parent)
// orientation; the endpoint whose label matches the edge label is the
// child, preferring (parent, child) when both fit.
AggregatedTree parse_aggregated(const std::string& raw);

}  // namespace treeform
