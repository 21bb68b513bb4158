#pragma once

#include "kpm/report.hpp"
#include "kpm/types.hpp"

namespace kpm::verify {

// Named verification suites behind the `verify` subcommand.  Each returns a
// deterministic report given (params, seed); exit-code handling is the
// caller's job.  Suite names: barriers, greedy, even, absorbing, pipelines,
// threshold-scan.
RunReport run_suite(const std::string& name, const Params& params, std::uint64_t seed);

RunReport barriers_suite(const Params& params, std::uint64_t seed);
RunReport greedy_suite(const Params& params, std::uint64_t seed);
RunReport even_suite(const Params& params, std::uint64_t seed);
RunReport absorbing_suite(const Params& params, std::uint64_t seed);
RunReport pipelines_suite(const Params& params, std::uint64_t seed);
RunReport threshold_scan_suite(const Params& params, std::uint64_t seed);

// Round-trip and report-determinism checks over the generated corpus; used
// by the acceptance tests (not a named CLI suite).
RunReport io_determinism_suite(const Params& params, std::uint64_t seed);

const std::vector<std::string>& suite_names();

}  // namespace kpm::verify
