#pragma once

#include "kpm/types.hpp"

namespace kpm {

// Matching inside the family of even crossing k-sets of a bipartition with
// |A_1| = |A_2| = n/2 (parts 0 and 1 here) and even part size n.  Returns a
// perfect matching when |A| is even and a matching of size n-1 when |A| is
// odd.  Every returned edge is even with respect to bip.
//
// The construction peels two even edges at a time: inside every part i >= 2
// pick two vertices of the same side, extend both (k-2)-sets with one vertex
// from each of A_1, A_2, B_1, B_2 paired so both k-sets come out even, and
// recurse on the rest.  The odd case first reassigns one A-vertex of some
// part i >= 2 to B and drops the single edge whose original parity is wrong.
Matching even_matching(int k, int n, const Bipartition& bip);

}  // namespace kpm
