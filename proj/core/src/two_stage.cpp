#include "allpay/two_stage.hpp"

#include <cmath>

#include "allpay/errors.hpp"
#include "allpay/special.hpp"

namespace allpay {
namespace {

constexpr double kContinuationSlack = 1e-8;

void check_ability(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw DomainError("two_stage: ability must lie in (0,1)");
}

// sum_l V_l * rank_probability(l, n1-1, z) over the prize ranks (< n2).
double prize_weighted_rank_mass(double z, const ContestSpec& s) {
    double acc = 0.0;
    for (int l = 1; l <= s.n2 - 1; ++l) {
        if (s.prizes[l - 1] == 0.0) continue;
        acc += s.prizes[l - 1] * rank_probability(l, s.n1 - 1, z, s.prior);
    }
    return acc;
}

}  // namespace

TwoStageSpec validate_two_stage(TwoStageSpec ts) {
    ts.contest = validate_spec(std::move(ts.contest));
    if (ts.contest.prizes.back() != 0.0)
        throw DomainError("two_stage: the last prize must be zero (fewer prizes than "
                          "admitted players)");
    return ts;
}

double second_stage_effort(double a, const TwoStageSpec& ts, const Quadrature& q) {
    return restricted_effort(a, ts.contest, q);
}

double continuation_value(double a, const TwoStageSpec& ts, const Quadrature& q) {
    check_ability(a);
    const ContestSpec& s = ts.contest;
    const double Fa = s.prior.cdf(a);
    const double prize_part =
        prize_weighted_rank_mass(a, s) / scaled_belief_normalizer(Fa, s.n1, s.n2);
    // The V_{n2} term is zero by validation; keep the expression shape anyway.
    const double last_part = s.prizes[s.n2 - 1] * std::pow(1.0 - Fa, s.n2 - 1) /
                             belief_normalizer(Fa, s.n1, s.n2);
    const double b2 = second_stage_effort(a, ts, q);
    return prize_part - last_part - s.cost.g(b2) / a;
}

double first_stage_effort(double a, const TwoStageSpec& ts, const Quadrature& q) {
    check_ability(a);
    const ContestSpec& s = ts.contest;
    double u2 = continuation_value(a, ts, q);
    if (u2 < -kContinuationSlack)
        throw NumericError("two_stage: negative continuation value");
    u2 = std::max(u2, 0.0);
    if (s.n2 == s.n1) return 0.0;  // nobody is eliminated, no first-stage incentive
    const double promotion_mass = integrate(
        [&s](double x) { return x * order_stat_pdf(s.n2, s.n1 - 1, x, s.prior); }, 0.0, a,
        q);
    return ts.stage_one_cost().g_inverse(std::max(0.0, u2 * promotion_mass));
}

double deviated_second_stage_response(double a, double a_tilde, const TwoStageSpec& ts,
                                      const StrategyTable& table) {
    check_ability(a);
    check_ability(a_tilde);
    const ContestSpec& s = ts.contest;
    const double scaled =
        scaled_belief_normalizer(s.prior.cdf(a_tilde), s.n1, s.n2);
    auto objective = [&](double e) {
        const double gamma = table.invert(e).ability;
        return prize_weighted_rank_mass(gamma, s) / scaled - s.cost.g(e) / a;
    };

    // Coarse scan to bracket the maximizer, then golden-section refinement.
    const double e_hi = table.max_effort();
    if (e_hi <= 0.0) return 0.0;
    const int scan = 64;
    int best = 0;
    double best_val = objective(0.0);
    for (int i = 1; i <= scan; ++i) {
        const double v = objective(e_hi * i / scan);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = e_hi * std::max(0, best - 1) / scan;
    double hi = e_hi * std::min(scan, best + 1) / scan;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > 1e-11 * std::max(1.0, e_hi)) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = objective(x1);
        }
    }
    return 0.5 * (lo + hi);
}

double deviation_gain(double a, double a_tilde, const TwoStageSpec& ts,
                      const StrategyTable& table, const Quadrature& q) {
    check_ability(a);
    check_ability(a_tilde);
    const ContestSpec& s = ts.contest;
    const double admit_prob =
        s.n2 >= s.n1 ? 1.0 : order_stat_cdf(s.n2, s.n1 - 1, a_tilde, s.prior);
    const double response = deviated_second_stage_response(a, a_tilde, ts, table);
    const double gamma = table.invert(response).ability;
    const double u2_dev =
        prize_weighted_rank_mass(gamma, s) /
            scaled_belief_normalizer(s.prior.cdf(a_tilde), s.n1, s.n2) -
        s.cost.g(response) / a;
    const double b1 = first_stage_effort(a_tilde, ts, q);
    return admit_prob * u2_dev - ts.stage_one_cost().g(b1) / a;
}

DeviationSlope deviation_slope(double a, const TwoStageSpec& ts, const StrategyTable& table,
                               double h_coarse, double h_fine, const Quadrature& q) {
    check_ability(a);
    if (!(h_fine > 0.0 && h_coarse > h_fine))
        throw DomainError("two_stage: need h_coarse > h_fine > 0");

    // The finite differences divide the per-evaluation error of L by 2h, so
    // the gain evaluations here run at much tighter tolerances than the
    // module default; the solver tolerances (strategy inversion 1e-12 in
    // ability, golden section second-order) sit below this eps.
    Quadrature tight = q;
    tight.abs_tol = 2e-14;
    tight.rel_tol = 1e-12;
    const double eps_floor = 5e-14;

    double l_scale = 0.0;
    auto gain = [&](double at) {
        const double v = deviation_gain(a, at, ts, table, tight);
        l_scale = std::max(l_scale, std::abs(v));
        return v;
    };
    auto central = [&](double h) {
        return (gain(a + h) - gain(a - h)) / (2.0 * h);
    };

    DeviationSlope out;
    out.slope_coarse = central(h_coarse);
    out.slope_fine = central(h_fine);
    const double r = h_coarse / h_fine;
    const double r2 = r * r;
    out.richardson = (r2 * out.slope_fine - out.slope_coarse) / (r2 - 1.0);

    // Quadrature error propagated through the extrapolated difference
    // quotients, plus the extrapolation residual itself.
    const double eps = std::max(eps_floor, 10.0 * tight.rel_tol * l_scale);
    out.noise_floor = (r2 * (eps / h_fine) + eps / h_coarse) / (r2 - 1.0) +
                      std::abs(out.slope_fine - out.slope_coarse) / (r2 - 1.0);
    out.nonzero = std::abs(out.richardson) > 5.0 * out.noise_floor;
    out.sign = out.richardson > 0.0 ? 1 : (out.richardson < 0.0 ? -1 : 0);
    return out;
}

StrategyTable build_second_stage_table(const TwoStageSpec& ts, int grid_size,
                                       const Quadrature& q) {
    return build_strategy_table(ts.contest, grid_size, q);
}

}  // namespace allpay
