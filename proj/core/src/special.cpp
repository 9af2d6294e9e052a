#include "allpay/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "allpay/errors.hpp"

namespace allpay {

double binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    if (n <= 62) {
        std::uint64_t r = 1;
        for (int i = 1; i <= k; ++i) {
            // r * (n-k+i) stays within 128 bits; the division is exact.
            unsigned __int128 wide = static_cast<unsigned __int128>(r) *
                                     static_cast<unsigned __int128>(n - k + i);
            r = static_cast<std::uint64_t>(wide / static_cast<unsigned>(i));
        }
        return static_cast<double>(r);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double beta_function(int p, int q) {
    if (p < 1 || q < 1) throw DomainError("beta_function: parameters must be >= 1");
    long double r = 1.0L / p;
    for (int j = 1; j <= q - 1; ++j) r *= static_cast<long double>(j) / (p + j);
    return static_cast<double>(r);
}

double incomplete_beta_regularized(double x, int p, int q) {
    if (p < 1 || q < 1)
        throw DomainError("incomplete_beta_regularized: parameters must be >= 1");
    const int n = p + q - 1;
    double acc = 0.0;
    for (int j = p; j <= n; ++j)
        acc += binomial(n, j) * std::pow(x, j) * std::pow(1.0 - x, n - j);
    return acc;
}

double incomplete_beta(double x, int p, int q) {
    if (p < 0 || q < 0) throw DomainError("incomplete_beta: parameters must be nonnegative");
    if (p == 0 || q == 0) return 0.0;
    if (!(x > 0.0 && x < 1.0)) throw DomainError("incomplete_beta: x must lie in (0,1)");
    return beta_function(p, q) * incomplete_beta_regularized(x, p, q);
}

double order_stat_cdf(int ell, int n, double x, const Prior& prior) {
    if (n < 1) throw DomainError("order_stat_cdf: n must be positive");
    if (ell < 0 || ell > n + 1) throw DomainError("order_stat_cdf: rank out of range");
    if (ell == 0 || ell == n + 1) return 0.0;  // boundary conventions
    const double F = prior.cdf(x);
    double acc = 0.0;
    for (int j = n - ell + 1; j <= n; ++j)
        acc += binomial(n, j) * std::pow(F, j) * std::pow(1.0 - F, n - j);
    return acc;
}

double order_stat_pdf(int ell, int n, double x, const Prior& prior) {
    if (n < 1) throw DomainError("order_stat_pdf: n must be positive");
    if (ell < 1 || ell > n) throw DomainError("order_stat_pdf: rank out of range");
    const double F = prior.cdf(x);
    // n!/((n-ell)!(ell-1)!) == C(n, ell-1) * (n-ell+1)
    const double coeff = binomial(n, ell - 1) * (n - ell + 1);
    return coeff * std::pow(F, n - ell) * std::pow(1.0 - F, ell - 1) * prior.pdf(x);
}

double rank_probability(int rank, int others, double x, const Prior& prior) {
    if (others < 0 || rank < 1 || rank > others + 1)
        throw DomainError("rank_probability: rank out of range");
    const double F = prior.cdf(x);
    return binomial(others, rank - 1) * std::pow(1.0 - F, rank - 1) *
           std::pow(F, others - rank + 1);
}

double rank_probability_derivative(int rank, int others, double x, const Prior& prior) {
    if (others < 0 || rank < 1 || rank > others + 1)
        throw DomainError("rank_probability_derivative: rank out of range");
    const double F = prior.cdf(x);
    const double f = prior.pdf(x);
    const int fe = others - rank + 1;  // exponent of F
    const int se = rank - 1;           // exponent of (1-F)
    double up = 0.0, down = 0.0;
    if (fe > 0) up = fe * std::pow(F, fe - 1) * std::pow(1.0 - F, se);
    if (se > 0) down = se * std::pow(F, fe) * std::pow(1.0 - F, se - 1);
    return binomial(others, rank - 1) * f * (up - down);
}

namespace {

void check_n1_n2(const char* where, int n1, int n2) {
    if (n2 < 2 || n2 > n1)
        throw DomainError(std::string(where) + ": need 2 <= n2 <= n1");
}

}  // namespace

double belief_normalizer(double x, int n1, int n2) {
    check_n1_n2("belief_normalizer", n1, n2);
    if (x < 0.0 || x > 1.0) throw DomainError("belief_normalizer: x outside [0,1]");
    const double tail = std::pow(1.0 - x, n2 - 1);
    if (x == 0.0) return tail;  // B(0,.,.) = 0
    const double b = (x == 1.0) ? beta_function(n1 - n2 + 1, n2 - 1)
                                : incomplete_beta(x, n1 - n2 + 1, n2 - 1);
    return tail + (n2 - 1) * b;
}

double scaled_belief_normalizer(double x, int n1, int n2) {
    return binomial(n1 - 1, n2 - 1) * belief_normalizer(x, n1, n2);
}

double n2_monotonicity_threshold(int n1) {
    if (n1 < 2) throw DomainError("n2_monotonicity_threshold: n1 must be >= 2");
    auto r = [n1](double x, int n2) {
        double geom = 0.0, xp = 1.0;
        for (int i = 1; i <= n1 - n2; ++i) {
            xp *= x;
            geom += xp;
        }
        return (n2 - 1) * (geom + 2.0) - n1;
    };
    double a_hat = 0.0;
    for (int n2 = 3; n2 <= n1; ++n2) {
        if (r(0.0, n2) >= 0.0) continue;  // nonnegative everywhere, no root
        double lo = 0.0, hi = 1.0;        // r is increasing in x with r(1) > 0
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (r(mid, n2) < 0.0 ? lo : hi) = mid;
        }
        a_hat = std::max(a_hat, hi);
    }
    return a_hat;
}

}  // namespace allpay
