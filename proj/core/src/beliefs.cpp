#include "allpay/beliefs.hpp"

#include <algorithm>
#include <cmath>

#include "allpay/errors.hpp"
#include "allpay/special.hpp"

namespace allpay {
namespace {

void check(const PosteriorParams& p) {
    if (p.n2 < 2 || p.n2 > p.n1)
        throw DomainError("beliefs: need 2 <= n2 <= n1");
    if (!(p.own_ability > 0.0 && p.own_ability < 1.0))
        throw DomainError("beliefs: own ability must lie in (0,1)");
}

void check_opponent(double a_j) {
    if (!(a_j > 0.0 && a_j < 1.0))
        throw DomainError("beliefs: opponent ability must lie in (0,1)");
}

}  // namespace

double joint_posterior_density(std::span<const double> others, const PosteriorParams& p) {
    check(p);
    if (static_cast<int>(others.size()) != p.n2 - 1)
        throw DomainError("beliefs: joint density needs exactly n2-1 opponent abilities");
    double prod = 1.0;
    double mn = 1.0;
    for (double a : others) {
        check_opponent(a);
        prod *= p.prior.pdf(a);
        mn = std::min(mn, a);
    }
    const double norm = belief_normalizer(p.prior.cdf(p.own_ability), p.n1, p.n2);
    if (mn >= p.own_ability) return prod / norm;
    return std::pow(p.prior.cdf(mn), p.n1 - p.n2) * prod / norm;
}

double marginal_posterior_pdf(double a_j, const PosteriorParams& p) {
    check(p);
    check_opponent(a_j);
    const double Fi = p.prior.cdf(p.own_ability);
    const double norm = belief_normalizer(Fi, p.n1, p.n2);
    double bracket;
    if (a_j < p.own_ability) {
        const double Fj = p.prior.cdf(a_j);
        bracket = (p.n2 - 2) * incomplete_beta(Fj, p.n1 - p.n2 + 1, p.n2 - 2) +
                  std::pow(Fj, p.n1 - p.n2) * std::pow(1.0 - Fj, p.n2 - 2);
    } else {  // right limit at the tie
        bracket = (p.n2 - 2) * incomplete_beta(Fi, p.n1 - p.n2 + 1, p.n2 - 2) +
                  std::pow(1.0 - Fi, p.n2 - 2);
    }
    return p.prior.pdf(a_j) * bracket / norm;
}

double marginal_posterior_cdf(double a_j, const PosteriorParams& p) {
    check(p);
    check_opponent(a_j);
    const double Fj = p.prior.cdf(a_j);
    if (p.n2 == p.n1) return Fj;  // posterior equals prior
    const double Fi = p.prior.cdf(p.own_ability);
    const double norm = belief_normalizer(Fi, p.n1, p.n2);
    const int d = p.n1 - p.n2;  // >= 1 here
    if (a_j <= p.own_ability)
        return d * (Fj * incomplete_beta(Fj, d, p.n2 - 1) -
                    incomplete_beta(Fj, d + 1, p.n2 - 1)) / norm;
    return (d * (Fj * incomplete_beta(Fi, d, p.n2 - 1) -
                 incomplete_beta(Fi, d + 1, p.n2 - 1)) +
            (Fj - Fi) * std::pow(1.0 - Fi, p.n2 - 2) * (1.0 - std::pow(Fi, d))) /
           norm;
}

double belief_jump(const PosteriorParams& p) {
    check(p);
    if (p.n2 == p.n1) return 0.0;
    const double Fi = p.prior.cdf(p.own_ability);
    const double norm = belief_normalizer(Fi, p.n1, p.n2);
    return p.prior.pdf(p.own_ability) * std::pow(1.0 - Fi, p.n2 - 2) *
           (1.0 - std::pow(Fi, p.n1 - p.n2)) / norm;
}

double expected_opponent_ability(const PosteriorParams& p, const Quadrature& q) {
    check(p);
    auto weighted = [&p](double a) { return a * marginal_posterior_pdf(a, p); };
    return integrate(weighted, 0.0, p.own_ability, q) +
           integrate(weighted, p.own_ability, 1.0, q);
}

double expected_opponent_ability_uniform(const PosteriorParams& p) {
    check(p);
    if (!p.prior.is_uniform())
        throw DomainError("beliefs: closed-form expectation needs the uniform prior");
    const double a = p.own_ability;
    const double norm = belief_normalizer(a, p.n1, p.n2);
    const double d = p.n2 * incomplete_beta(a, p.n1 - p.n2 + 1, p.n2) +
                     std::pow(1.0 - a, p.n2);
    return 1.0 - 0.5 * d / norm;
}

double dominance_margin(double a_j, const PosteriorParams& p) {
    return p.prior.cdf(a_j) - marginal_posterior_cdf(a_j, p);
}

}  // namespace allpay
