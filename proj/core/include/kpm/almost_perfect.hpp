#pragma once

#include <optional>
#include <variant>

#include "kpm/solver.hpp"
#include "kpm/types.hpp"

namespace kpm {

// Escape evidence produced when the almost-perfect search gets stuck: the
// instance is then provably close to the space barrier.  D collects covered
// vertices with many completions into the helper family; the edges of the
// base matching meeting D form m_prime, and the covered vertices outside D
// span no edge at all.
struct SExtremalEvidence {
    Matching base;                            // the base matching M
    std::vector<std::vector<Vertex>> family;  // k*t disjoint crossing (k-1)-sets
    std::vector<std::vector<int>> d_sets;     // D_i per part
    Matching m_prime;                         // edges of M meeting D
    std::vector<std::int64_t> d_floor;        // per-part certified floor for |D_i|
    std::vector<std::int64_t> c_sizes;        // |(V(M') minus D) cap V_i|
    std::vector<int> targets;                 // codegree targets a_i in force
    bool heuristic_base = false;              // base matching not certified maximum
};

struct AlmostPerfectResult {
    std::variant<Matching, SExtremalEvidence> outcome;
    bool heuristic_base = false;
    bool matched() const { return std::holds_alternative<Matching>(outcome); }
    const Matching& matching() const { return std::get<Matching>(outcome); }
    const SExtremalEvidence& evidence() const { return std::get<SExtremalEvidence>(outcome); }
};

// Either a matching leaving at most alpha*n_i vertices uncovered in every
// part, or extremal evidence as above.  Codegree targets default to the true
// partite minimum codegrees; explicit targets are admitted as long as at most
// eta*n^(k-1) crossing (k-1)-sets per part fall below them (verified by exact
// enumeration).  t = ceil(k(k-1)/gamma) helper sets per part are required.
//
// The base matching comes from the exact solver while it fits in node_budget;
// otherwise a maximal matching is used, local augmentations repair any
// maximality violations found along the way, and the result is flagged.
AlmostPerfectResult almost_perfect_matching(
    const Hypergraph& h, const Params& params,
    const std::optional<std::vector<int>>& targets = std::nullopt,
    std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace kpm
