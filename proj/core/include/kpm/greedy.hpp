#pragma once

#include "kpm/types.hpp"

namespace kpm {

// Extend m to a maximal matching by scanning edges in lexicographic order.
void maximalize(const Hypergraph& h, Matching& m, CoverMask& used);
Matching maximal_matching(const Hypergraph& h);

// Constructive matcher with the unconditional guarantee
//   size >= max( min{n-k+2, sum a_i},  min{n-1, a_p + a_q} )
// where n is the smallest part size, a_i the partite minimum codegrees and
// (p, q) the two largest of them.  Works by repeated edge replacement: find
// disjoint crossing (k-1)-sets over unmatched vertices, locate a matched edge
// hosting neighbors of two of them, and trade one edge for two.
Matching greedy_fact_matching(const Hypergraph& h);

}  // namespace kpm
