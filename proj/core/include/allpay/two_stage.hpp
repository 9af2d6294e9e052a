#pragma once

#include <optional>

#include "allpay/equilibrium.hpp"

namespace allpay {

// Two-stage sequential elimination contest: all n1 players compete in a
// preliminary stage, the top n2 first-stage efforts advance, and prizes are
// awarded on second-stage ranking. The last prize must be zero (fewer prizes
// than admitted players). The first-stage cost function may differ from the
// second-stage one; by default they coincide.
struct TwoStageSpec {
    ContestSpec contest;
    std::optional<CostFn> first_stage_cost;

    const CostFn& stage_one_cost() const {
        return first_stage_cost ? *first_stage_cost : contest.cost;
    }
};

// validate_spec on the embedded contest plus the last-prize-zero requirement.
TwoStageSpec validate_two_stage(TwoStageSpec ts);

// Candidate second-stage effort: identical in form to the one-round
// entry-restricted equilibrium.
double second_stage_effort(double a, const TwoStageSpec& ts, const Quadrature& q = {});

// Expected utility from the second stage onward at the candidate strategies:
//   sum_l V_l rank_probability(l, n1-1, a)/J(F(a)) - g(b2(a))/a
// (the last-prize term vanishes by construction).
double continuation_value(double a, const TwoStageSpec& ts, const Quadrature& q = {});

// Candidate first-stage effort
//   b1(a) = g1^{-1}( u2(a) * int_0^a x dF_(n2, n1-1)(x) ),
// where the integral is the telescoped sum over the admission ranks and
// u2(a) multiplies it as a constant. Raises NumericError if u2 is negative
// beyond tolerance.
double first_stage_effort(double a, const TwoStageSpec& ts, const Quadrature& q = {});

// Best second-stage response of a player with true ability a whose
// first-stage effort mimicked type a_tilde: maximizes
//   sum_l V_l rank_probability(l, n1-1, gamma2(e)) / J(F(a_tilde)) - g(e)/a
// over e in [0, max tabulated effort] by a coarse scan plus golden-section
// refinement. `table` must be the second-stage strategy table of ts.
double deviated_second_stage_response(double a, double a_tilde, const TwoStageSpec& ts,
                                      const StrategyTable& table);

// Overall expected utility of deviating to b1(a_tilde) in stage one and then
// best-responding in stage two:
//   L(a_tilde) = P_admit(a_tilde) * u2_dev - g1(b1(a_tilde))/a,
// with P_admit the prior-order-statistic admission probability.
double deviation_gain(double a, double a_tilde, const TwoStageSpec& ts,
                      const StrategyTable& table, const Quadrature& q = {});

struct DeviationSlope {
    double slope_coarse = 0.0;  // central difference at step h_coarse
    double slope_fine = 0.0;    // central difference at step h_fine
    double richardson = 0.0;    // ratio-extrapolated slope
    double noise_floor = 0.0;
    bool nonzero = false;       // |richardson| > 5 * noise_floor
    int sign = 0;
};

// dL/d(a_tilde) at a_tilde = a by central differences with Richardson
// extrapolation. The noise floor is propagated from the quadrature
// tolerances of the L evaluations through the difference quotients.
DeviationSlope deviation_slope(double a, const TwoStageSpec& ts, const StrategyTable& table,
                               double h_coarse = 1e-3, double h_fine = 1e-4,
                               const Quadrature& q = {});

// Second-stage strategy table for a two-stage spec.
StrategyTable build_second_stage_table(const TwoStageSpec& ts, int grid_size = 512,
                                       const Quadrature& q = {});

}  // namespace allpay
