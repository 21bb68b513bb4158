#pragma once

#include "kpm/types.hpp"

namespace kpm {

// Named degree conditions under which a perfect matching is guaranteed for
// large parts.  The condition is always checked exactly on the instance; at
// desk scale the search itself certifies existence.
struct DenseSpec {
    enum class Kind { daykin_haggkvist, pikhurko };
    Kind kind = Kind::daykin_haggkvist;
    std::vector<int> L;  // pikhurko only: the distinguished part subset

    static DenseSpec daykin_haggkvist() { return {Kind::daykin_haggkvist, {}}; }
    static DenseSpec pikhurko(std::vector<int> parts) { return {Kind::pikhurko, std::move(parts)}; }
};

// Exact integer evaluation of the named condition.
//   daykin_haggkvist:  k * delta_1 >= (k-1) * (m^(k-1) - 1)
//   pikhurko(L):       2 * (delta_L m^|L| + delta_{comp} m^(k-|L|)) >= 3 m^k
bool check_dense_condition(const Hypergraph& h, const DenseSpec& spec);

// Perfect matching by greedy completion (repeatedly match the uncovered
// vertex of minimum remaining degree) with exact-solver fallback when the
// greedy stalls.  Throws ConditionNotMet if the named condition fails and
// NoPerfectMatching if none exists (possible only below the sizes for which
// the cited conditions are valid; never silently ignored).
Matching dense_pm(const Hypergraph& h, const DenseSpec& spec);

}  // namespace kpm
