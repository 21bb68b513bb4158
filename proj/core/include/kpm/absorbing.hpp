#pragma once

#include <optional>
#include <variant>

#include "kpm/constructions.hpp"
#include "kpm/lattice.hpp"
#include "kpm/types.hpp"

namespace kpm {

// Witness pair for an absorbing edge: two disjoint edges inside S union e
// with |e1 cap S| = k-1, |e1 cap e| = 1, |e2 cap S| = 2, |e2 cap e| = k-2.
struct AbsorbingCertificate {
    Edge e1, e2;
};

// S must be balanced with two vertices per part, e an edge disjoint from S.
// The search over admissible pairs is exhaustive; the first certificate in
// scan order is returned.
std::optional<AbsorbingCertificate> is_absorbing_edge(const Hypergraph& h,
                                                      const std::vector<Vertex>& s,
                                                      const Edge& e);

// Replace e by the certificate pair; grows the matching by exactly one edge.
Matching absorb_step(const Hypergraph& h, const Matching& m, const std::vector<Vertex>& s,
                     const Edge& e, const AbsorbingCertificate& cert);

// T balanced and disjoint from the crossing k-set S; true iff both H[T] and
// H[S union T] have perfect matchings.
bool is_perfect_absorbing(const Hypergraph& h, const Edge& s,
                          const std::vector<std::vector<int>>& t_lists);

struct ReachRecord {
    Vertex u, v;
    int i = 1;
    std::int64_t count = 0;      // qualifying (ik-1)-sets W
    std::int64_t threshold = 0;  // ceil(beta * n^(ik-1))
    bool reachable = false;
};

// Exact count of (ik-1)-sets W such that both {u} union W and {v} union W
// are balanced and perfectly matchable.  u and v must be distinct vertices of
// the same part.
ReachRecord reach_count(const Hypergraph& h, Vertex u, Vertex v, int i, const Ratio& beta);

// All vertices of v's part reachable from v at (beta, i).
std::vector<Vertex> reachable_neighborhood(const Hypergraph& h, Vertex v, const Ratio& beta, int i);

// Every pair of X is (beta, i)-reachable.
bool is_closed(const Hypergraph& h, const std::vector<Vertex>& x, const Ratio& beta, int i);

// Partition of one part into reachability classes plus a residue of weakly
// connected vertices.  Classes are connected components of the "reach count
// at least ceil(beta n^(ik-1))" relation; each class records the smallest
// pairwise count actually achieved, which certifies closedness at the relaxed
// threshold beta' = min_count / n^(ik-1) <= beta.
struct PartPartition {
    int part = 0;
    std::vector<std::vector<int>> classes;
    std::vector<int> residue;
    std::vector<std::int64_t> class_min_count;
    std::int64_t threshold = 0;
};
PartPartition closed_partition(const Hypergraph& h, int part, const Ratio& beta, int i, int c,
                               std::int64_t min_nbhd = 1);

// Family selection report (seeded sampling with pairwise-disjointness repair).
struct FamilyReport {
    std::vector<std::vector<Vertex>> members;  // disjoint balanced i0*k-sets
    std::vector<std::int64_t> target_hits;     // per input family
    int attempts = 0;
    std::uint64_t seed = 0;
    std::int64_t size_cap = 0;          // floor(lambda n / (4 i0 k))
    std::int64_t per_target_floor = 0;  // ceil(lambda^2 n / (32 i0 k))
    bool success = false;
};

class SelectionFailed : public Error {
public:
    SelectionFailed(std::string what, FamilyReport best)
        : Error(Errc::selection_failed, std::move(what)), best_attempt(std::move(best)) {}
    FamilyReport best_attempt;
};

// Sample each balanced i0*k-set with probability lambda / (8 i0 k n^(i0k-1))
// (one splitmix64 draw per candidate, lexicographic order), keep a maximal
// disjoint prefix, drop members in no target family, and accept when the size
// cap and the per-target floor both hold.  Retries with derived seeds up to
// `retries` times, then throws SelectionFailed carrying the best attempt.
FamilyReport select_family(const Hypergraph& h,
                           const std::vector<std::vector<std::vector<Vertex>>>& targets,
                           const Ratio& lambda, int i0, std::uint64_t seed, int retries);

// Absorbing matching for the three-large-codegrees regime: a matching m_prime
// of size at most sqrt(alpha)*n such that every balanced 2k-set S keeps at
// least alpha*n S-absorbing edges in it.  Throws DegreeTooLow or
// SelectionFailed.
Matching absorbing_matching_I(const Hypergraph& h, const Params& params);

// Number of S-absorbing members of m.
std::int64_t count_absorbing(const Hypergraph& h, const std::vector<Vertex>& s, const Matching& m);

// Family of disjoint i0*k-sets, each spanning a matching of size i0, such
// that every crossing k-set S keeps at least alpha*n S-perfect-absorbing
// members.  Requires the named part to be explicitly (beta, i0)-closed and
// its opposite codegree to be at least epsilon*n.
FamilyReport perfect_absorbing_family(const Hypergraph& h, int closed_part, const Params& params);
std::int64_t count_perfect_absorbing(const Hypergraph& h, const Edge& s, const FamilyReport& fam);

// Iterated merge of paired cells whose unit difference lies in the lattice of
// robust index vectors under the current partition.  Terminates because every
// merge lowers the cell count; the transcript lists each merge with the
// generating set used at that moment.
struct MergeStep {
    int part = 0;
    std::vector<long long> difference;
    std::vector<IndexVector> generators;
};
struct CellPair {
    int part;
    int cell_a, cell_b;
};
struct MergeOutcome {
    RefinedPartition partition;
    std::vector<CellPair> remaining_pairs;
    std::vector<MergeStep> steps;
};
MergeOutcome lattice_merge(const Hypergraph& h, const RefinedPartition& p,
                           std::vector<CellPair> pairs, const Ratio& mu);

// Dichotomy pipeline: either a perfect-absorbing family exists, or the
// instance is close to a parity family and the exact defect is reported.
struct ParityWitness {
    Bipartition bip;
    Side side = Side::even;
    std::int64_t defect = 0;
};
struct DichotomyTranscript {
    bool shortcut = false;                  // top codegree forced one part closed
    int closed_part = -1;                   // part used for the family branch
    std::vector<PartPartition> partitions;  // per part
    std::vector<MergeStep> merges;
    std::vector<int> unmerged_parts;        // parts whose pair survived
    std::vector<IndexVector> robust;        // robust vectors of the final partition
    bool flip_check_ok = false;             // no robust vector flips within a pair
    bool degree_bound_ok = false;           // (eps n)^(k-1) a_1 >= 2 mu n^k held
    std::string parity;                     // "even", "odd" or "mixed"
};
struct DichotomyOutcome {
    std::variant<FamilyReport, ParityWitness> outcome;
    DichotomyTranscript transcript;
    bool family() const { return std::holds_alternative<FamilyReport>(outcome); }
};
DichotomyOutcome absorbing_or_extremal(const Hypergraph& h, const Params& params);

}  // namespace kpm
