#pragma once

#include "kpm/types.hpp"

namespace kpm::oracle {

// Reference implementations used only to cross-check the fast paths.  They
// enumerate completely, with no pruning heuristics, and share no code with
// the solvers they audit.

// Maximum matching size by complete enumeration over assignments of part-0
// vertices to incident edges.
int naive_max_matching(const Hypergraph& h);

// S-absorbing test by enumerating every pair of disjoint edges inside
// S union e and checking the intersection profile directly.
bool naive_is_absorbing(const Hypergraph& h, const std::vector<Vertex>& s, const Edge& e);

}  // namespace kpm::oracle
