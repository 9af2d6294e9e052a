#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "allpay/beliefs.hpp"
#include "allpay/equilibrium.hpp"

namespace allpay {

// Monte Carlo configuration. Identical seeds give bit-identical outputs
// regardless of thread count: work is chunked into batches whose draws are
// pure functions of (seed, batch index, slot), and batch results merge in
// index order.
struct McConfig {
    std::uint64_t seed = 0x5eed5eed5eed5eedULL;
    std::size_t samples = 1'000'000;      // accepted records (or trials)
    std::size_t batch = std::size_t{1} << 14;
    int threads = 0;                      // 0 = hardware concurrency
};

// Rejection sampler for the admitted-opponent distribution: draw n1-1
// opponent abilities iid from the prior, accept the draw iff the player's
// own ability ranks within the top n2 of the pooled n1 values, and record
// the abilities of the other n2-1 admitted players (the top-ranked opponents).
// Loops until `samples` accepted records, then returns the pooled accepted
// opponents, sorted. Throws NumericError if the acceptance rate falls below
// 1e-6 over a probe window.
std::vector<double> mc_posterior_empirical(const PosteriorParams& p, const McConfig& mc);

// sup_x |F_hat(x) - cdf(x)| for a sorted sample.
double ks_distance(const std::vector<double>& sorted_sample,
                   const std::function<double(double)>& cdf);

// Asymptotic two-sided critical value c(alpha)/sqrt(n); alpha = 0.01 gives
// c = sqrt(-ln(alpha/2)/2) ~= 1.6276.
double ks_critical_value(std::size_t n, double alpha = 0.01);

struct AbilityBin {
    double lo = 0.0, hi = 0.0;
    std::uint64_t admitted = 0;               // admitted players landing in the bin
    std::vector<std::uint64_t> rank_counts;   // times they took each prize rank
};

struct ContestSimulation {
    double highest_mean = 0.0, highest_se = 0.0;  // effort of the top player
    double total_mean = 0.0, total_se = 0.0;      // summed effort of the admitted
    std::vector<AbilityBin> bins;
    std::uint64_t trials = 0;
};

// Simulates full contests: draw n1 abilities, admit the top n2, map admitted
// abilities through the strategy table, rank efforts and allocate prizes.
ContestSimulation simulate_contest(const ContestSpec& spec, const StrategyTable& table,
                                   const McConfig& mc, int bin_count = 10);

struct BestResponse {
    double effort = 0.0;
    double utility = 0.0;
    std::size_t grid_index = 0;
};

// Exhaustive search of expected_utility over a uniform effort grid spanning
// [0, 1.2 * max tabulated effort]. grid >= 500.
BestResponse best_response_search(double a_i, const ContestSpec& spec,
                                  const StrategyTable& table, int grid = 2000);

struct IdentityCheck {
    double mc_estimate = 0.0;
    double closed_form = 0.0;
    double std_error = 0.0;
    double z = 0.0;
};

// Monte Carlo check of the k-dimensional min-statistic box integral
//   int_(0,x)^k F^{n-m}(t_(1)) prod f(t_i) dt = (n-m)! k! / (n-m+k)! F^{n-m+k}(x)
// against its closed form. Requires k in [1,6] and n - m >= 0.
IdentityCheck min_statistic_identity_check(int n, int m, int k, double x,
                                           const Prior& prior, const McConfig& mc);

}  // namespace allpay
