#pragma once

#include <string>
#include <vector>

#include "kpm/types.hpp"

namespace kpm {

// Machine-readable run report: line-delimited key-value records plus an
// optional JSON rendering.  Identical seeds and params produce byte-identical
// payloads; timing lines are excluded from the determinism hash.
struct Check {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct RunReport {
    std::string tool = "kpm";
    int schema = 1;
    std::string command;
    std::string params;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::int64_t elapsed_ms = 0;

    int failed() const;
    bool pass() const { return failed() == 0; }
};

std::string render_report(const RunReport& r, bool with_timings = true);
std::uint64_t report_hash(const RunReport& r);  // over the timing-free payload
std::string report_json(const RunReport& r, bool with_timings = true);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace kpm
