#pragma once

#include "qcorr/channels.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qcorr {

/// Ensemble verification suites exposed through the CLI and reused by the
/// acceptance tests. Cases run concurrently with per-case seeds; records
/// are ordered by case index regardless of completion order.
struct VerifyOptions {
    std::string suite;
    /// 0 picks the suite default.
    int count = 0;
    std::vector<int> dims{2, 2};
    /// Partition of the measured factor for the multipartite suite.
    std::vector<int> partition{2, 2};
    std::uint64_t seed = 7;
    OptimizerConfig optimizer;
    int threads = 0;
};

struct VerifySummary {
    std::string suite;
    int pass = 0;
    int fail = 0;
    int inconclusive = 0;
    double max_residual = 0.0;
    std::vector<nlohmann::json> cases;
    nlohmann::json config;
};

bool suite_known(const std::string& name);
std::vector<std::string> known_suites();

/// Throws UnsupportedMeasure for unknown suite names.
VerifySummary run_verify_suite(const VerifyOptions& options);

} // namespace qcorr
