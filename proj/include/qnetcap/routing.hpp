#pragma once

#include <cstddef>
#include <vector>

#include "qnetcap/network.hpp"

namespace qnetcap {

/// Bipartition separating alpha (source side) from beta.
struct Cut {
    std::vector<std::size_t> source_side;
    std::vector<std::size_t> sink_side;
    /// Indices of edges crossing the bipartition.
    std::vector<std::size_t> edges;
};

/// Sum of selected edge values across the bipartition given by `source_side`
/// membership flags.
double cut_value(const BoundedGraph& graph, const std::vector<bool>& on_source_side, Selector selector);

Cut make_cut(const BoundedGraph& graph, const std::vector<bool>& on_source_side);

struct EdgeFlow {
    std::size_t edge;
    std::size_t from;
    std::size_t to;
    double amount;
};

struct FlowResult {
    double value = 0.0;
    Cut mincut;
    /// Non-zero edge flows, in edge order.
    std::vector<EdgeFlow> flows;
};

struct PathResult {
    double value = 0.0;
    /// alpha ... beta, empty when the users are disconnected.
    std::vector<std::size_t> nodes;
};

/// Maximum-bottleneck path between the users (single-path routing).
PathResult widest_path(const BoundedGraph& graph, Selector selector);

/// Undirected maximum flow between the users (flooding). The reported cut is
/// the set reachable from alpha in the final residual graph.
FlowResult max_flow(const BoundedGraph& graph, Selector selector);

struct MinCut {
    double value = 0.0;
    Cut cut;
};

/// Exhaustive scan of all bipartitions. Throws SizeError above 22 nodes.
MinCut brute_force_min_cut(const BoundedGraph& graph, Selector selector);

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
};

struct CapacityReport {
    BoundPair single_path;
    BoundPair flooding;
    BoundPair min_neighbourhood;
    PathResult path_lower;
    PathResult path_upper;
    FlowResult flow_lower;
    FlowResult flow_upper;
};

CapacityReport capacity_report(const BoundedGraph& graph);

}  // namespace qnetcap
