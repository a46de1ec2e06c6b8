#pragma once

#include <vector>

#include "ssgh/canonical.hpp"
#include "ssgh/edge_set.hpp"
#include "ssgh/ribbon_graph.hpp"

namespace ssgh {

// Connected unlabeled ribbon graphs without circles, up to isomorphism, by
// edge count 1..max_edges. Entry e holds the graphs with e edges and genus at
// most max_genus, in canonical form sorted by canonical bytes.
std::vector<std::vector<RibbonGraph>> connected_maps(int max_edges, int max_genus);

// Largest edge count of a graph of type (g, n): every unlabeled vertex has
// valence at least three.
int max_edge_count(int genus, int labels);

// All P-labeled connected graphs of type (g, n), canonical, sorted by bytes.
std::vector<RibbonGraph> labeled_graphs(int genus, int labels, int threads = 1);

// Proper nonempty semistable subsets, in increasing bitmask order of the
// ascending edge list.
std::vector<EdgeSet> semistable_subsets(const RibbonGraph& g);

// Every strictly decreasing chain of semistable subsets, the empty chain
// included.
std::vector<Chain> semistable_chains(const RibbonGraph& g);

}  // namespace ssgh
