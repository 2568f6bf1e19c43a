#include "netsel/louvain.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace netsel {

namespace {

constexpr double kMinGain = 1e-9;

// Weighted undirected graph with self-loops, used for the aggregated levels.
struct WeightedGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
    std::vector<double> self_loop;                                   // counted twice in degree
    std::vector<double> weighted_degree;
    double total_weight2 = 0;  // 2m

    std::size_t size() const { return adj.size(); }
};

WeightedGraph undirected_projection(const EdgeSet& E) {
    const std::size_t n = E.node_count();
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j : E.adjacency[i])
            if (i != j) pairs.emplace(std::min(i, j), std::max(i, j));

    WeightedGraph g;
    g.adj.resize(n);
    g.self_loop.assign(n, 0.0);
    g.weighted_degree.assign(n, 0.0);
    for (const auto& [a, b] : pairs) {
        g.adj[a].emplace_back(b, 1.0);
        g.adj[b].emplace_back(a, 1.0);
        g.weighted_degree[a] += 1.0;
        g.weighted_degree[b] += 1.0;
        g.total_weight2 += 2.0;
    }
    return g;
}

// One level of local moving; returns the (renumbered) community of each node
// and whether anything moved.
bool local_moving(const WeightedGraph& g, Rng& rng, std::vector<std::uint32_t>& community) {
    const std::size_t n = g.size();
    community.resize(n);
    std::iota(community.begin(), community.end(), 0u);
    if (g.total_weight2 == 0.0) return false;

    std::vector<double> community_degree = g.weighted_degree;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);

    const double m2 = g.total_weight2;
    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::uint32_t node : order) {
            const std::uint32_t from = community[node];
            // links from node into each neighboring community
            std::unordered_map<std::uint32_t, double> links;
            links[from];  // ensure the current community is considered
            for (const auto& [nb, w] : g.adj[node]) links[community[nb]] += w;

            community_degree[from] -= g.weighted_degree[node];
            const double base = links[from] - g.weighted_degree[node] * community_degree[from] / m2;

            // visit candidates in id order so equal gains break to the lower id
            std::vector<std::pair<std::uint32_t, double>> candidates(links.begin(), links.end());
            std::sort(candidates.begin(), candidates.end());
            double best_gain = 0.0;
            std::uint32_t best = from;
            for (const auto& [comm, link] : candidates) {
                if (comm == from) continue;
                const double gain =
                    link - g.weighted_degree[node] * community_degree[comm] / m2 - base;
                if (gain > best_gain + kMinGain) {
                    best_gain = gain;
                    best = comm;
                }
            }
            community_degree[best] += g.weighted_degree[node];
            if (best != from) {
                community[node] = best;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

void renumber(std::vector<std::uint32_t>& community) {
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    for (auto& c : community) {
        auto [it, inserted] = remap.emplace(c, static_cast<std::uint32_t>(remap.size()));
        c = it->second;
    }
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& community,
                        std::size_t community_count) {
    WeightedGraph out;
    out.adj.resize(community_count);
    out.self_loop.assign(community_count, 0.0);
    out.weighted_degree.assign(community_count, 0.0);
    std::vector<std::map<std::uint32_t, double>> acc(community_count);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::uint32_t ci = community[i];
        out.self_loop[ci] += g.self_loop[i];
        for (const auto& [j, w] : g.adj[i]) {
            const std::uint32_t cj = community[j];
            if (ci == cj)
                out.self_loop[ci] += w;  // both directions visit this edge once each
            else
                acc[ci][cj] += w;
        }
    }
    for (std::size_t c = 0; c < community_count; ++c) {
        out.weighted_degree[c] = out.self_loop[c];
        for (const auto& [d, w] : acc[c]) {
            out.adj[c].emplace_back(d, w);
            out.weighted_degree[c] += w;
        }
        out.total_weight2 += out.weighted_degree[c];
    }
    return out;
}

double graph_modularity(const WeightedGraph& g, const std::vector<std::uint32_t>& community) {
    if (g.total_weight2 == 0.0) return 0.0;
    const std::size_t nc = 1 + *std::max_element(community.begin(), community.end());
    std::vector<double> internal(nc, 0.0), total(nc, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        internal[community[i]] += g.self_loop[i];
        total[community[i]] += g.weighted_degree[i];
        for (const auto& [j, w] : g.adj[i])
            if (community[i] == community[j]) internal[community[i]] += w;
    }
    const double m2 = g.total_weight2;
    double q = 0;
    for (std::size_t c = 0; c < nc; ++c) q += internal[c] / m2 - (total[c] / m2) * (total[c] / m2);
    return q;
}

}  // namespace

double modularity(const EdgeSet& E, const std::vector<std::uint32_t>& assignment) {
    return graph_modularity(undirected_projection(E), assignment);
}

std::vector<std::uint32_t> louvain_communities(const EdgeSet& E, std::uint64_t seed) {
    const std::size_t n = E.node_count();
    std::vector<std::uint32_t> assignment(n);
    std::iota(assignment.begin(), assignment.end(), 0u);
    if (n == 0) return assignment;

    WeightedGraph g = undirected_projection(E);
    Rng rng(derive_seed(seed, "louvain"));
    int level = 0;
    for (;;) {
        std::vector<std::uint32_t> community;
        const bool improved = local_moving(g, rng, community);
        if (!improved && level > 0) break;
        renumber(community);
        const std::size_t nc =
            community.empty() ? 0 : 1 + *std::max_element(community.begin(), community.end());
        for (auto& a : assignment) a = community[a];
        if (!improved || nc == g.size()) break;
        g = aggregate(g, community, nc);
        ++level;
    }
    // dense ids ordered by first member
    renumber(assignment);
    return assignment;
}

}  // namespace netsel
