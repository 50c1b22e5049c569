#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thinsets {

struct SuiteOptions {
    bool quick = false;      // reduced horizons, looser scale-dependent bounds
    uint64_t seed = 12345;   // drives every randomized check
    int threads = 0;         // 0 = leave OpenMP defaults
};

struct CriterionResult {
    std::string id;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

// Runs the full acceptance battery (13 criteria). Deterministic for a fixed
// seed: identical results across runs and thread counts.
std::vector<CriterionResult> run_suite(const SuiteOptions& opts);

// {"criteria":[{"criterion_id":...,"status":...,"measured":...,"threshold":...},...],
//  "all_pass":...} with deterministic number formatting.
std::string suite_json(const std::vector<CriterionResult>& results);

bool suite_all_pass(const std::vector<CriterionResult>& results);

}  // namespace thinsets
