#pragma once

#include <map>
#include <variant>

#include "kpm/absorbing.hpp"
#include "kpm/types.hpp"

namespace kpm {

// Independent-set witness that the instance is close to the space barrier:
// no edge lies inside the union of the C_i and every C_i meets its size
// floor n - a_i - eps*n.
struct SExtremalWitness {
    std::vector<std::vector<int>> c_lists;  // per-part independent sets
    std::vector<std::int64_t> floors;       // per-part floors actually required
    std::vector<int> codegrees;
    Ratio eps;
    bool heuristic = false;  // found by greedy search, not exhaustively
};

// Parity-family witness that the instance is close to the divisibility
// barrier, with the defect counted exactly.
struct DExtremalWitness {
    Bipartition bip;
    Side side = Side::even;
    std::int64_t defect = 0;
    std::vector<int> codegrees;
    Ratio eps;
};

std::optional<SExtremalWitness> check_s_extremal(const Hypergraph& h, const Ratio& eps);
bool verify_s_witness(const Hypergraph& h, const Ratio& eps,
                      const std::vector<std::vector<int>>& c_lists,
                      SExtremalWitness* out = nullptr);

std::optional<DExtremalWitness> check_d_extremal(
    const Hypergraph& h, const Ratio& eps,
    const std::optional<Bipartition>& candidate = std::nullopt,
    const Params* pipeline_params = nullptr);

// Stage-by-stage record of a pipeline run: removed matchings, the scalar
// quantities each stage balanced, and free-form notes.
struct StageRecord {
    std::string name;
    Matching removed;
    std::vector<std::pair<std::string, std::int64_t>> stats;
};
struct PipelineTranscript {
    std::string route;
    std::vector<int> part_order;  // part_order[j] = original id of working part j
    std::vector<StageRecord> stages;
    std::map<std::string, std::string> notes;
    StageRecord& stage(const std::string& name);
};

// Matching pipeline for instances close to the space barrier.  Either reaches
// min{n-1, sum a_i} or certifies closeness to the divisibility barrier.
struct SExtremalOutcome {
    std::variant<Matching, DExtremalWitness> result;
    PipelineTranscript transcript;
    bool matched() const { return std::holds_alternative<Matching>(result); }
    const Matching& matching() const { return std::get<Matching>(result); }
    const DExtremalWitness& witness() const { return std::get<DExtremalWitness>(result); }
};
SExtremalOutcome s_extremal_matching(const Hypergraph& h, const Ratio& eps, const Ratio& gamma,
                                     const SExtremalWitness& witness);

// Matching pipeline for near-parity-family instances whose even location
// subgraphs are all nearly complete: template matching inside the exact
// parity family, greedy filling of rare location classes, dense blocks for
// the rest.  eta is a root-expressed constant so sqrt(eps) passes exactly.
struct EvenExtremalOutcome {
    Matching matching;
    PipelineTranscript transcript;
};
EvenExtremalOutcome even_extremal_matching(const Hypergraph& h, const Bipartition& bip,
                                           const RootRatio& eta, const Ratio& eps0);

// Full pipeline for divisibility-extremal instances.
struct DExtremalOutcome {
    Matching matching;
    PipelineTranscript transcript;
};
DExtremalOutcome d_extremal_matching(const Hypergraph& h, const Ratio& eps, const Ratio& eps0,
                                     const DExtremalWitness& witness);

// Top-level dispatcher.  Routes through the greedy shortcut, the two
// extremal pipelines or the absorbing route, and always reports the route
// taken; stage failures carry their stage identifier.
struct MainOutcome {
    Matching matching;
    PipelineTranscript transcript;
};
MainOutcome main_matching(const Hypergraph& h, const Params& params);

}  // namespace kpm
