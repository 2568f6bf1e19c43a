#pragma once

#include <string>

#include "netsel/dataset.hpp"
#include "netsel/graph.hpp"

namespace netsel {

enum class NetworkKind { knn, threshold, explicit_edges };

// M(A, d(.), rho): a similarity-driven edge construction with a target edge
// count. density_label only tags reports (sparse/dense/social).
struct NetworkModelSpec {
    NetworkKind kind = NetworkKind::knn;
    std::size_t rho = 0;
    std::string density_label = "dense";
    std::string name;  // report label, e.g. "knn_dense"
};

// <a,b>/(|a||b|); 0 when either vector is all-zero.
double cosine_similarity(const SparseRow& a, const SparseRow& b);

// dot product against a cached norm pair; rows must be sorted by item id
double cosine_similarity(const SparseRow& a, double norm_a, const SparseRow& b, double norm_b);

double row_norm(const SparseRow& row);

// Every node gets out-edges to its k = floor(rho/|V|) most cosine-similar
// other nodes (ties to the lower id). k = 0 yields an empty edge set with
// zero_degree_warning set.
EdgeSet build_knn(const AttributeMatrix& A, const NetworkModelSpec& spec, unsigned workers = 1);

// The rho highest-similarity unordered pairs, materialized as symmetric
// directed edges. Boundary ties broken by lexicographic (i,j).
EdgeSet build_threshold(const AttributeMatrix& A, const NetworkModelSpec& spec);

struct ExplicitLoadStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
};

// Edge-list file: one `src<TAB>dst` (or `src,dst`) per line, directed, ids
// resolved through the log's node-name table.
EdgeSet load_explicit(const std::string& path, const EventLog& log,
                      ExplicitLoadStats* stats = nullptr);

// Same format but ids are already dense indices in [0, node_count).
EdgeSet load_explicit_dense(const std::string& path, std::size_t node_count,
                            ExplicitLoadStats* stats = nullptr);

// Out-degree-preserving randomization: each out-edge (i,j) is independently
// retargeted with probability p to a uniform u in V \ {i}, resampling on
// collision with a current out-edge of i.
EdgeSet rewire(const EdgeSet& E, double p, std::uint64_t seed, unsigned workers = 1);

}  // namespace netsel
