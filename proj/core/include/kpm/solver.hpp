#pragma once

#include <chrono>
#include <optional>

#include "kpm/types.hpp"

namespace kpm {

struct SolveReport {
    Matching matching;
    bool optimal = false;
    std::uint64_t nodes = 0;
    std::chrono::microseconds elapsed{0};
    int nu() const { return matching.size(); }
};

inline constexpr std::uint64_t kDefaultNodeBudget = 200'000'000ULL;

// Exact maximum matching by branch and bound: branch on the incident edges of
// an uncovered vertex of minimum remaining degree (ties by part then index),
// plus a "leave the vertex uncovered" branch; bound is the matching size plus
// the smallest per-part count of still-available vertices.  When the node
// budget runs out the best matching found so far is returned with
// optimal=false.
SolveReport max_matching(const Hypergraph& h, std::uint64_t node_budget = kDefaultNodeBudget);

// nu(H) == n for equal part sizes; the certificate is validated before return.
struct PerfectMatchingResult {
    bool exists = false;
    std::optional<Matching> certificate;
};
PerfectMatchingResult has_perfect_matching(const Hypergraph& h,
                                           std::uint64_t node_budget = kDefaultNodeBudget);

// Exact perfect-matching search restricted to explicit per-part vertex lists
// (all the same length).  Independent of the branch-and-bound path above.
std::optional<std::vector<Edge>> find_pm_within(const Hypergraph& h,
                                                const std::vector<std::vector<int>>& verts);
bool perfectly_matchable(const Hypergraph& h, const std::vector<std::vector<int>>& verts);

}  // namespace kpm
