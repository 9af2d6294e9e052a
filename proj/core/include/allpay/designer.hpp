#pragma once

#include <span>
#include <string>
#include <vector>

#include "allpay/equilibrium.hpp"

namespace allpay {

struct SweepRow {
    int n2 = 0;
    double expected_highest = 0.0;
    double expected_total = 0.0;
    std::string error;  // nonempty when this row failed; metrics then invalid
};

// Per-n2 designer metrics under a capacity cap, with argmax annotations.
struct SweepReport {
    int n1 = 0;
    int capacity = 0;
    std::vector<SweepRow> rows;  // n2 = 2..capacity, in order
    int argmax_highest = 0;
    int argmax_total = 0;
    bool corner_flag = false;  // both argmaxes sit at n2 = 2 or n2 = capacity
};

// E[max effort] = int_0^1 b(a) n1 F^{n1-1}(a) f(a) da over the tabulated
// strategy (the top-ability player is always admitted and exerts the most).
double expected_highest_effort(const StrategyTable& table, const Quadrature& q = {});
double expected_highest_effort(const ContestSpec& spec, int grid_size = 512,
                               const Quadrature& q = {});

// n2 * int_0^1 b(a) f(a) da.
double expected_total_effort(const StrategyTable& table, const Quadrature& q = {});
double expected_total_effort(const ContestSpec& spec, int grid_size = 512,
                             const Quadrature& q = {});

// Computes both metrics for every n2 in [2, capacity]. The prize template is
// truncated or zero-padded to length n2 for each row; row-level failures are
// recorded and the sweep continues.
SweepReport sweep_n2(int n1, int capacity, std::vector<double> prize_template,
                     const Prior& prior, const CostFn& cost, int grid_size = 512,
                     const Quadrature& q = {});

struct DominanceRow {
    int n2 = 0;
    double ability = 0.0;
    double margin = 0.0;  // b(a | n1) - b(a | n2)
};

// Margin of the one-round effort over the restricted effort for every n2 in
// [2, n1] across the ability grid. All margins are >= 0 up to numerical
// tolerance, with equality only on the n2 = n1 rows.
std::vector<DominanceRow> dominance_report(int n1, std::vector<double> prize_template,
                                           const Prior& prior, const CostFn& cost,
                                           std::span<const double> abilities,
                                           int grid_size = 256, const Quadrature& q = {});

}  // namespace allpay
