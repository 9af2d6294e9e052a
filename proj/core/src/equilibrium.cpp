#include "allpay/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "allpay/errors.hpp"
#include "allpay/special.hpp"

namespace allpay {
namespace {

// Negative inner values within this multiple of the quadrature tolerance are
// rounding residue and clamp to zero; anything larger signals a prize vector
// for which the strictly increasing equilibrium formula breaks down.
constexpr double kNegativeSlack = 100.0;

double clamp_potential(double value, const Quadrature& q) {
    if (value >= 0.0) return value;
    if (value < -kNegativeSlack * q.abs_tol)
        throw NumericError(
            "equilibrium: negative effort potential (the prize vector admits no "
            "strictly increasing equilibrium at this ability)");
    return 0.0;
}

// Integrand of the inner g-value of the restricted contest.
double restricted_integrand(double x, const ContestSpec& s) {
    const double Fx = s.prior.cdf(x);
    double ranked = 0.0;
    for (int l = 1; l <= s.n2 - 1; ++l) {
        if (s.prizes[l - 1] == 0.0) continue;
        ranked += s.prizes[l - 1] * rank_probability_derivative(l, s.n1 - 1, x, s.prior);
    }
    double out = 0.0;
    if (ranked != 0.0) out = x * ranked / scaled_belief_normalizer(Fx, s.n1, s.n2);
    const double last = s.prizes[s.n2 - 1];
    if (last != 0.0) {
        out -= last * (s.n2 - 1) * x * std::pow(1.0 - Fx, s.n2 - 2) * s.prior.pdf(x) /
               belief_normalizer(Fx, s.n1, s.n2);
    }
    return out;
}

// Integrand of the one-round contest (no shading).
double one_round_integrand(double x, int n1, const std::vector<double>& prizes,
                           const Prior& prior) {
    double acc = 0.0;
    for (int l = 1; l <= n1; ++l) {
        if (prizes[l - 1] == 0.0) continue;
        acc += prizes[l - 1] * rank_probability_derivative(l, n1 - 1, x, prior);
    }
    return x * acc;
}

std::vector<double> chebyshev_grid(int n) {
    std::vector<double> grid(n);
    for (int j = 0; j < n; ++j) {
        const double t = 0.5 - 0.5 * std::cos(std::numbers::pi * j / (n - 1));
        grid[j] = kAbilityLo + (kAbilityHi - kAbilityLo) * t;
    }
    return grid;
}

template <typename Fn>
StrategyTable build_table(const Fn& integrand, const CostFn& cost, ContestSpec meta,
                          int grid_size, const Quadrature& q) {
    if (grid_size < 16) throw DomainError("equilibrium: grid_size must be >= 16");
    const std::vector<double> grid = chebyshev_grid(grid_size);

    // Split the error budget across the intervals of the cumulative sweep.
    Quadrature per = q;
    per.abs_tol = q.abs_tol / grid_size;
    per.rel_tol = q.rel_tol / grid_size;

    std::vector<double> efforts(grid.size());
    std::vector<double> slopes(grid.size(), std::numeric_limits<double>::quiet_NaN());
    double inner = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        inner += integrate(integrand, prev, grid[i], per);
        prev = grid[i];
        efforts[i] = cost.g_inverse(clamp_potential(inner, q));
        // b'(a) = phi(a) / g'(b(a)) since g(b(a)) accumulates phi; where g'
        // vanishes (zero effort under convex cost) the secant estimate fills in.
        const double gp = cost.g_prime(efforts[i]);
        if (gp > 1e-12) slopes[i] = integrand(grid[i]) / gp;
    }
    return StrategyTable(grid, std::move(efforts), std::move(slopes), std::move(meta));
}

ContestSpec one_round_spec(int n1, std::vector<double> prizes, const Prior& prior,
                           const CostFn& cost) {
    ContestSpec s;
    s.n1 = n1;
    s.n2 = n1;
    s.prizes = std::move(prizes);
    s.prior = prior;
    s.cost = cost;
    return validate_spec(std::move(s));
}

}  // namespace

StrategyTable::StrategyTable(std::vector<double> grid, std::vector<double> efforts,
                             ContestSpec spec)
    : StrategyTable(std::move(grid), std::move(efforts),
                    std::vector<double>(), std::move(spec)) {}

StrategyTable::StrategyTable(std::vector<double> grid, std::vector<double> efforts,
                             std::vector<double> slopes, ContestSpec spec)
    : grid_(std::move(grid)),
      efforts_(std::move(efforts)),
      slopes_(std::move(slopes)),
      spec_(std::move(spec)) {
    if (grid_.size() != efforts_.size() || grid_.size() < 2)
        throw DomainError("strategy table: grid and efforts must match, length >= 2");
    if (!slopes_.empty() && slopes_.size() != grid_.size())
        throw DomainError("strategy table: slopes must match the grid");
    strictly_increasing_ = true;
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
        if (!(grid_[i] < grid_[i + 1]))
            throw DomainError("strategy table: grid must be strictly increasing");
        if (efforts_[i + 1] < efforts_[i] - 1e-15)
            throw NumericError("strategy table: efforts are not monotone");
        if (!(efforts_[i + 1] > efforts_[i])) strictly_increasing_ = false;
    }

    const std::size_t n = grid_.size();
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = grid_[i + 1] - grid_[i];
        d[i] = (efforts_[i + 1] - efforts_[i]) / h[i];
    }

    if (slopes_.empty()) slopes_.assign(n, std::numeric_limits<double>::quiet_NaN());
    // Fill missing slopes with the Fritsch-Carlson weighted harmonic mean.
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isnan(slopes_[i])) continue;
        if (i == 0) {
            slopes_[0] = d[0];
        } else if (i == n - 1) {
            slopes_[n - 1] = d[n - 2];
        } else if (d[i - 1] * d[i] <= 0.0) {
            slopes_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }

    // Monotonicity clamp (Fritsch-Carlson region): negative slopes go to
    // zero, flat segments force zero end slopes, and (alpha, beta) is pulled
    // inside the radius-3 disk. For smooth data the clamp stays inactive and
    // analytic slopes keep their full accuracy.
    for (double& m : slopes_)
        if (m < 0.0) m = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] <= 0.0) {
            slopes_[i] = 0.0;
            slopes_[i + 1] = 0.0;
            continue;
        }
        const double alpha = slopes_[i] / d[i];
        const double beta = slopes_[i + 1] / d[i];
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            slopes_[i] = tau * alpha * d[i];
            slopes_[i + 1] = tau * beta * d[i];
        }
    }
}

double StrategyTable::eval_segment(std::size_t i, double a) const {
    const double h = grid_[i + 1] - grid_[i];
    const double t = (a - grid_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * efforts_[i] + h10 * h * slopes_[i] + h01 * efforts_[i + 1] +
           h11 * h * slopes_[i + 1];
}

double StrategyTable::operator()(double ability) const {
    if (ability <= 0.0) return 0.0;
    if (ability <= grid_.front())
        return efforts_.front() * (ability / grid_.front());
    if (ability >= grid_.back()) return efforts_.back();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), ability);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    return eval_segment(i, ability);
}

StrategyTable::Inversion StrategyTable::invert(double effort) const {
    if (effort < 0.0) return {0.0, true};
    if (effort == 0.0) return {0.0, false};
    if (effort > efforts_.back()) return {1.0, true};
    if (effort <= efforts_.front()) {
        if (efforts_.front() <= 0.0) return {0.0, false};
        return {grid_.front() * (effort / efforts_.front()), false};
    }
    double lo = grid_.front(), hi = grid_.back();
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        ((*this)(mid) < effort ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), false};
}

// Single evaluations run a tighter relative target than the module default
// so that direct and tabulated efforts agree to 1e-9 on shared grids.
Quadrature single_shot(const Quadrature& q) {
    Quadrature out = q;
    out.rel_tol = q.rel_tol / 50.0;
    return out;
}

double restricted_effort(double a_i, const ContestSpec& spec, const Quadrature& q) {
    if (!(a_i >= 0.0 && a_i < 1.0))
        throw DomainError("equilibrium: ability must lie in [0,1)");
    const ContestSpec s = validate_spec(spec);
    const double inner = integrate([&s](double x) { return restricted_integrand(x, s); },
                                   0.0, a_i, single_shot(q));
    return s.cost.g_inverse(clamp_potential(inner, q));
}

double one_round_effort(double a_i, int n1, std::vector<double> prizes, const Prior& prior,
                        const CostFn& cost, const Quadrature& q) {
    if (!(a_i >= 0.0 && a_i < 1.0))
        throw DomainError("equilibrium: ability must lie in [0,1)");
    const ContestSpec s = one_round_spec(n1, std::move(prizes), prior, cost);
    const double inner = integrate(
        [&s](double x) { return one_round_integrand(x, s.n1, s.prizes, s.prior); }, 0.0,
        a_i, single_shot(q));
    return cost.g_inverse(clamp_potential(inner, q));
}

StrategyTable build_strategy_table(const ContestSpec& spec, int grid_size,
                                   const Quadrature& q) {
    ContestSpec s = validate_spec(spec);
    return build_table([s](double x) { return restricted_integrand(x, s); }, s.cost, s,
                       grid_size, q);
}

StrategyTable build_one_round_table(int n1, std::vector<double> prizes, const Prior& prior,
                                    const CostFn& cost, int grid_size, const Quadrature& q) {
    const ContestSpec s = one_round_spec(n1, std::move(prizes), prior, cost);
    return build_table(
        [s](double x) { return one_round_integrand(x, s.n1, s.prizes, s.prior); }, s.cost,
        s, grid_size, q);
}

WinProbabilities win_probabilities(double e, double a_i, const ContestSpec& spec,
                                   const StrategyTable& table) {
    if (!(a_i > 0.0 && a_i < 1.0))
        throw DomainError("equilibrium: ability must lie in (0,1)");
    const auto inv = table.invert(e);
    const double gamma = inv.ability;
    const double Fi = spec.prior.cdf(a_i);
    const double scaled = scaled_belief_normalizer(Fi, spec.n1, spec.n2);
    const double norm = belief_normalizer(Fi, spec.n1, spec.n2);

    WinProbabilities out;
    out.boundary_clamped = inv.clamped;
    out.per_rank.resize(spec.n2);
    for (int l = 1; l <= spec.n2 - 1; ++l)
        out.per_rank[l - 1] = rank_probability(l, spec.n1 - 1, gamma, spec.prior) / scaled;
    out.per_rank[spec.n2 - 1] =
        std::pow(1.0 - spec.prior.cdf(gamma), spec.n2 - 1) / norm;
    return out;
}

double expected_utility(double e, double a_i, const ContestSpec& spec,
                        const StrategyTable& table) {
    const auto probs = win_probabilities(e, a_i, spec, table);
    double util = 0.0;
    for (int l = 0; l < spec.n2; ++l) util += spec.prizes[l] * probs.per_rank[l];
    return util - spec.cost.g(e) / a_i;
}

}  // namespace allpay
