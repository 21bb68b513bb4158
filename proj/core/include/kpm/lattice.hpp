#pragma once

#include "kpm/types.hpp"

namespace kpm {

// Per-cell membership counts of a set with respect to cells W_1..W_d.
// Sets touching the residue W_0 are rejected.
using IndexVector = std::vector<int>;

IndexVector index_vector(const RefinedPartition& p, std::span<const Vertex> s);
IndexVector edge_index_vector(const RefinedPartition& p, const Edge& e);

struct RobustIndexSet {
    std::vector<IndexVector> vectors;   // lexicographic order
    std::vector<std::int64_t> counts;   // edges realizing each vector
    std::int64_t residue_edges = 0;     // edges meeting W_0, not indexed
    std::int64_t threshold = 0;         // ceil(mu * prod part sizes)
    bool unequal_parts = false;         // threshold generalized to mu * prod n_i
};

// All index vectors realized by at least mu * prod(n_i) edges (exact count).
RobustIndexSet robust_index_set(const Hypergraph& h, const RefinedPartition& p, const Ratio& mu);

// True iff v is an integer linear combination of the generators, decided by
// exact integer elimination.
bool in_lattice(const std::vector<long long>& v,
                const std::vector<std::vector<long long>>& generators);

std::vector<long long> to_ll(const IndexVector& v);

// u_{cell_a} - u_{cell_b} in the coordinate system of cells 1..d.
std::vector<long long> unit_difference(const RefinedPartition& p, int cell_a, int cell_b);

}  // namespace kpm
