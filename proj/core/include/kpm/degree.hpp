#pragma once

#include "kpm/types.hpp"

namespace kpm {

// Number of vertices in the missing part completing the crossing (k-1)-set S
// to an edge.  S must have size exactly k-1.
std::int64_t codegree(const Hypergraph& h, const CrossingSet& s);

// delta_I: minimum degree over all crossing sets living in the given parts.
// The degree of such a set is the number of edges containing it.
std::int64_t min_degree_over(const Hypergraph& h, const std::vector<int>& parts);

// a_i = delta_{[k] minus {i}}: minimum codegree over (k-1)-sets avoiding part i.
int partite_min_codegree(const Hypergraph& h, int part);

// All a_i in part order.
std::vector<int> partite_codegrees(const Hypergraph& h);

// delta'_d: minimum of delta_I over all d-element part subsets I.
std::int64_t partite_min_d_degree(const Hypergraph& h, int d);

// Degree of v in the complement relative to the same k-partition.
std::int64_t complement_degree(const Hypergraph& h, Vertex v);

// Largest complement degree over all vertices.
std::int64_t max_complement_degree(const Hypergraph& h);

}  // namespace kpm
