#include "netsel/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace netsel {

std::vector<std::size_t> EdgeSet::total_degrees() const {
    std::vector<std::size_t> deg(node_count(), 0);
    for (NodeId i = 0; i < node_count(); ++i) {
        deg[i] += adjacency[i].size();
        for (NodeId j : adjacency[i]) deg[j] += 1;
    }
    return deg;
}

bool EdgeSet::has_edge(NodeId src, NodeId dst) const {
    const auto& row = adjacency[src];
    return std::binary_search(row.begin(), row.end(), dst);
}

double row_norm(const SparseRow& row) {
    double s = 0;
    for (const SparseEntry& e : row) s += e.value * e.value;
    return std::sqrt(s);
}

double cosine_similarity(const SparseRow& a, double norm_a, const SparseRow& b, double norm_b) {
    if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
    double dot = 0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia].item < b[ib].item)
            ++ia;
        else if (a[ia].item > b[ib].item)
            ++ib;
        else {
            dot += a[ia].value * b[ib].value;
            ++ia;
            ++ib;
        }
    }
    return dot / (norm_a * norm_b);
}

double cosine_similarity(const SparseRow& a, const SparseRow& b) {
    return cosine_similarity(a, row_norm(a), b, row_norm(b));
}

EdgeSet build_knn(const AttributeMatrix& A, const NetworkModelSpec& spec, unsigned workers) {
    if (spec.kind != NetworkKind::knn) throw std::runtime_error("build_knn: spec.kind mismatch");
    const std::size_t n = A.node_count();
    EdgeSet E;
    E.directed = true;
    E.adjacency.resize(n);
    if (n == 0) return E;

    const std::size_t k = std::min(spec.rho / n, n - 1);
    if (k == 0) {
        E.zero_degree_warning = true;
        return E;
    }

    std::vector<double> norms(n);
    for (NodeId i = 0; i < n; ++i) norms[i] = row_norm(A.rows[i]);

    parallel_for(n, workers, [&](std::size_t i) {
        // (similarity desc, id asc); full scan keeps this oracle-exact
        std::vector<std::pair<double, NodeId>> sims;
        sims.reserve(n - 1);
        for (NodeId j = 0; j < n; ++j) {
            if (j == i) continue;
            sims.emplace_back(cosine_similarity(A.rows[i], norms[i], A.rows[j], norms[j]), j);
        }
        auto better = [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        };
        std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(k), sims.end(),
                          better);
        auto& row = E.adjacency[i];
        row.reserve(k);
        for (std::size_t t = 0; t < k; ++t) row.push_back(sims[t].second);
        std::sort(row.begin(), row.end());
    });
    E.edge_count = E.recount_edges();
    return E;
}

EdgeSet build_threshold(const AttributeMatrix& A, const NetworkModelSpec& spec) {
    if (spec.kind != NetworkKind::threshold)
        throw std::runtime_error("build_threshold: spec.kind mismatch");
    const std::size_t n = A.node_count();
    EdgeSet E;
    E.directed = false;
    E.adjacency.resize(n);
    if (n < 2 || spec.rho == 0) return E;

    std::vector<double> norms(n);
    for (NodeId i = 0; i < n; ++i) norms[i] = row_norm(A.rows[i]);

    struct Pair {
        double sim;
        NodeId i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            pairs.push_back({cosine_similarity(A.rows[i], norms[i], A.rows[j], norms[j]), i, j});

    const std::size_t take = std::min<std::size_t>(spec.rho, pairs.size());
    auto better = [](const Pair& a, const Pair& b) {
        if (a.sim != b.sim) return a.sim > b.sim;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::partial_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(take), pairs.end(),
                      better);
    for (std::size_t t = 0; t < take; ++t) {
        E.adjacency[pairs[t].i].push_back(pairs[t].j);
        E.adjacency[pairs[t].j].push_back(pairs[t].i);
    }
    for (auto& row : E.adjacency) std::sort(row.begin(), row.end());
    E.edge_count = E.recount_edges();
    return E;
}

namespace {

EdgeSet load_edge_pairs(const std::string& path,
                        const std::function<NodeId(const std::string&, std::size_t)>& resolve,
                        std::size_t node_count, ExplicitLoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge-list file: " + path);
    std::vector<std::set<NodeId>> adj(node_count);
    ExplicitLoadStats local;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
        std::istringstream ss(line);
        std::string src_s, dst_s;
        if (!std::getline(ss, src_s, delim) || !std::getline(ss, dst_s, delim))
            throw std::runtime_error("edge-list line " + std::to_string(line_no) +
                                     ": expected `src" + (delim == '\t' ? "\\t" : ",") + "dst`");
        const NodeId src = resolve(src_s, line_no);
        const NodeId dst = resolve(dst_s, line_no);
        if (src == dst) {
            ++local.self_loops_dropped;
            continue;
        }
        if (!adj[src].insert(dst).second) ++local.duplicates_dropped;
    }
    EdgeSet E;
    E.directed = true;
    E.adjacency.resize(node_count);
    for (NodeId i = 0; i < node_count; ++i)
        E.adjacency[i].assign(adj[i].begin(), adj[i].end());
    E.edge_count = E.recount_edges();
    if (stats) *stats = local;
    return E;
}

}  // namespace

EdgeSet load_explicit(const std::string& path, const EventLog& log, ExplicitLoadStats* stats) {
    std::unordered_map<std::string, NodeId> ids;
    for (std::size_t i = 0; i < log.node_names.size(); ++i)
        ids.emplace(log.node_names[i], static_cast<NodeId>(i));
    auto resolve = [&](const std::string& s, std::size_t line_no) -> NodeId {
        auto it = ids.find(s);
        if (it == ids.end())
            throw std::runtime_error("edge-list line " + std::to_string(line_no) +
                                     ": unknown node id '" + s + "'");
        return it->second;
    };
    return load_edge_pairs(path, resolve, log.node_count, stats);
}

EdgeSet load_explicit_dense(const std::string& path, std::size_t node_count,
                            ExplicitLoadStats* stats) {
    auto resolve = [&](const std::string& s, std::size_t line_no) -> NodeId {
        std::size_t idx = 0;
        try {
            idx = std::stoul(s);
        } catch (const std::exception&) {
            throw std::runtime_error("edge-list line " + std::to_string(line_no) +
                                     ": unknown node id '" + s + "'");
        }
        if (idx >= node_count)
            throw std::runtime_error("edge-list line " + std::to_string(line_no) +
                                     ": unknown node id '" + s + "'");
        return static_cast<NodeId>(idx);
    };
    return load_edge_pairs(path, resolve, node_count, stats);
}

EdgeSet rewire(const EdgeSet& E, double p, std::uint64_t seed, unsigned workers) {
    if (p < 0.0 || p > 1.0) throw std::runtime_error("rewire: p must be in [0,1]");
    const std::size_t n = E.node_count();
    EdgeSet out;
    out.directed = E.directed;
    out.adjacency.resize(n);
    parallel_for(n, workers, [&](std::size_t i) {
        Rng rng(derive_seed(seed, std::uint64_t{i}, "rewire"));
        std::set<NodeId> current(E.adjacency[i].begin(), E.adjacency[i].end());
        for (NodeId j : E.adjacency[i]) {
            if (p == 0.0 || !rng.bernoulli(p)) continue;
            if (current.size() >= n - 1) continue;  // no legal target exists
            current.erase(j);
            for (;;) {
                NodeId u = static_cast<NodeId>(rng.below(n - 1));
                if (u >= i) ++u;  // skip self
                if (current.insert(u).second) break;
            }
        }
        out.adjacency[i].assign(current.begin(), current.end());
    });
    out.edge_count = out.recount_edges();
    return out;
}

}  // namespace netsel
