#pragma once

#include <vector>

#include "allpay/contest.hpp"
#include "allpay/quadrature.hpp"

namespace allpay {

// Monotone tabulation of an equilibrium effort function b(.) on a Chebyshev
// ability grid, interpolated with a monotone piecewise cubic (Fritsch-
// Carlson), so evaluation between nodes never overshoots. Below the first
// node the table continues linearly to (0,0); b(0) = 0 since g(0) = 0 and
// the effort integral vanishes. Immutable once built.
class StrategyTable {
public:
    StrategyTable(std::vector<double> grid, std::vector<double> efforts, ContestSpec spec);
    // Supplies node slopes directly (NaN entries fall back to secant-based
    // estimates); all slopes pass through a monotonicity clamp.
    StrategyTable(std::vector<double> grid, std::vector<double> efforts,
                  std::vector<double> slopes, ContestSpec spec);

    // Effort at an ability; clamps to the last tabulated effort above the grid.
    double operator()(double ability) const;

    struct Inversion {
        double ability = 0.0;
        bool clamped = false;  // true when the effort fell outside the table range
    };
    // Inverse of the effort map by monotone bisection (1e-12 ability
    // tolerance). Efforts outside the range clamp to ability 0 or 1.
    Inversion invert(double effort) const;

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& efforts() const { return efforts_; }
    const ContestSpec& spec() const { return spec_; }
    double max_effort() const { return efforts_.back(); }
    bool strictly_increasing() const { return strictly_increasing_; }

private:
    double eval_segment(std::size_t i, double a) const;

    std::vector<double> grid_, efforts_, slopes_;
    ContestSpec spec_;
    bool strictly_increasing_ = false;
};

// Unique symmetric equilibrium effort of the entry-restricted contest at one
// ability. The inner g-value is a sum of per-prize integrals shaded by
// J(F(x), n1, n2) plus the last-prize term shaded by I(F(x), n1, n2); a
// materially negative inner value (possible with a large last prize) raises
// NumericError instead of being clamped.
double restricted_effort(double a_i, const ContestSpec& spec, const Quadrature& q = {});

// Equilibrium effort of a regular one-round contest with n1 players and n1
// prizes (shorter vectors are zero-padded). Computed from its own unshaded
// integrand, independent of the restricted path.
double one_round_effort(double a_i, int n1, std::vector<double> prizes,
                        const Prior& prior, const CostFn& cost, const Quadrature& q = {});

// Tabulates restricted_effort on a Chebyshev grid of grid_size >= 16 nodes.
// The inner integral is accumulated left to right in one quadrature sweep;
// the absolute error budget is divided across the intervals.
StrategyTable build_strategy_table(const ContestSpec& spec, int grid_size = 256,
                                   const Quadrature& q = {});

// Same tabulation for the one-round contest (spec() of the result carries
// n2 = n1 and the zero-padded prize vector).
StrategyTable build_one_round_table(int n1, std::vector<double> prizes, const Prior& prior,
                                    const CostFn& cost, int grid_size = 256,
                                    const Quadrature& q = {});

struct WinProbabilities {
    std::vector<double> per_rank;   // length n2, entries in [0,1]
    bool boundary_clamped = false;  // effort fell outside the table range
};

// Closed-form probabilities of taking each prize with effort e at ability
// a_i when every opponent plays the tabulated strategy:
//   P_l = rank_probability(l, n1-1, gamma(e)) / J(F(a_i))   for l < n2,
//   P_n2 = (1 - F(gamma(e)))^{n2-1} / I(F(a_i)),
// with gamma the strategy inverse.
WinProbabilities win_probabilities(double e, double a_i, const ContestSpec& spec,
                                   const StrategyTable& table);

// sum_l V_l P_l(e) - g(e)/a_i.
double expected_utility(double e, double a_i, const ContestSpec& spec,
                        const StrategyTable& table);

}  // namespace allpay
