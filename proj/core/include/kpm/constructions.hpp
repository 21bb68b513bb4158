#pragma once

#include <optional>

#include "kpm/types.hpp"

namespace kpm {

enum class Side { even, odd };
inline Parity side_parity(Side s) { return s == Side::even ? Parity::even : Parity::odd; }
const char* side_name(Side s);

// Declarative description of the two named extremal constructions.
struct BarrierSpec {
    enum class Kind { space, divisibility };
    Kind kind = Kind::space;
    int k = 3;
    int n = 3;
    std::vector<int> a;        // per-part |A_i| (prefix sets)
    Side side = Side::even;    // divisibility only

    struct Validation {
        bool sizes_ok = false;       // 0 <= a_i <= n everywhere
        bool space_sum_ok = false;   // sum a_i <= n-1 (space barrier regime)
        bool window_ok = false;      // n/2-1 <= a_i <= n/2+1 for each part
        bool odd_total = false;      // sum a_i odd (blocks perfect matchings)
    };
    Validation validate() const;
};

Hypergraph realize(const BarrierSpec& spec);

// All crossing k-sets as edges.
Hypergraph complete_kpartite(int k, const std::vector<int>& sizes);

// Edges are the crossing k-sets meeting at least one A_i, with A_i the first
// a_i vertices of part i.
Hypergraph space_barrier(int k, int n, const std::vector<int>& a);

// Edges are the crossing k-sets of the requested parity with respect to bip.
Hypergraph parity_family(int k, int n, const Bipartition& bip, Side side);

// Induced subgraph on the sides selected by a 0/1 location vector.
// An empty selected side is reported as a typed signal, not an exception.
struct LocationSubgraph {
    std::optional<Hypergraph> graph;
    std::vector<std::vector<int>> to_parent;  // [part][new index] -> parent index
    int empty_part = -1;
    bool ok() const { return graph.has_value(); }
};
LocationSubgraph location_subgraph(const Hypergraph& h, const Bipartition& bip,
                                   const std::vector<char>& location);

// Each crossing k-set kept independently with probability p; lexicographic
// enumeration with one splitmix64 draw per candidate set.
Hypergraph random_instance(int k, int n, const Ratio& p, std::uint64_t seed);

// Seeded uniform removal of `remove` edges followed by addition of `add`
// non-edges.  Removal happens first so seeds stay portable.
Hypergraph perturb(const Hypergraph& h, std::int64_t add, std::int64_t remove,
                   std::uint64_t seed);

// New hypergraph whose part j is the old part perm[j].
Hypergraph permute_parts(const Hypergraph& h, const std::vector<int>& perm);
Edge unpermute_edge(const Edge& e, const std::vector<int>& perm);
Matching unpermute_matching(const Matching& m, const std::vector<int>& perm);

// Induced subgraph on explicit per-part vertex lists (sorted ascending).
struct Induced {
    Hypergraph graph;
    std::vector<std::vector<int>> to_parent;    // [part][new index] -> parent index
    std::vector<std::vector<int>> from_parent;  // [part][parent index] -> new index or -1
    Edge edge_to_parent(const Edge& e) const;
    Matching matching_to_parent(const Matching& m) const;
};
Induced induced_subgraph(const Hypergraph& h, const std::vector<std::vector<int>>& keep);

}  // namespace kpm
