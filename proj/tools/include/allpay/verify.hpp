#pragma once

#include <cstddef>
#include <cstdint>

#include <json.hpp>

namespace allpay::cli {

struct VerifyConfig {
    std::size_t samples = 100'000;
    std::uint64_t seed = 12345;
    int threads = 0;  // 0 = hardware concurrency; never echoed in the report
};

// Runs the full verification suite (posterior sampler vs closed forms,
// simulated contests vs quadrature, best-response search, the min-statistic
// integral identity, reproducibility) and returns a pass/fail report with
// statistics. Byte-identical for identical (samples, seed) regardless of
// thread count.
nlohmann::ordered_json run_verification(const VerifyConfig& cfg);

}  // namespace allpay::cli
