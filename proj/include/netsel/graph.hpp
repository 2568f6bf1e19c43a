#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "netsel/common.hpp"

namespace netsel {

// Directed graph as per-node sorted out-neighbor lists. No self-loops, no
// duplicate (src,dst). Undirected graphs are stored as symmetric pairs.
struct EdgeSet {
    bool directed = true;
    std::vector<std::vector<NodeId>> adjacency;
    std::size_t edge_count = 0;
    bool zero_degree_warning = false;  // set by build_knn when k floors to 0

    std::size_t node_count() const { return adjacency.size(); }

    std::size_t out_degree(NodeId i) const { return adjacency[i].size(); }

    std::size_t recount_edges() const {
        return std::accumulate(adjacency.begin(), adjacency.end(), std::size_t{0},
                               [](std::size_t acc, const auto& row) { return acc + row.size(); });
    }

    std::vector<std::size_t> total_degrees() const;

    bool has_edge(NodeId src, NodeId dst) const;
};

}  // namespace netsel
