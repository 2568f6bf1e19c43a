#pragma once

#include <cstdint>
#include <vector>

#include "netsel/graph.hpp"

namespace netsel {

// Louvain modularity optimization on the undirected simple projection of E.
// Local-moving passes repeat until no single move gains more than 1e-9
// modularity, then the graph is aggregated and the process repeats. Node
// visit order is shuffled by the seed. Community ids are dense from 0,
// numbered by first member. Isolated nodes end up as singletons.
std::vector<std::uint32_t> louvain_communities(const EdgeSet& E, std::uint64_t seed);

// Newman modularity of an assignment on the undirected projection of E.
double modularity(const EdgeSet& E, const std::vector<std::uint32_t>& assignment);

}  // namespace netsel
