#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "allpay/errors.hpp"
#include "allpay/prior.hpp"
#include "allpay/special.hpp"

using namespace allpay;

namespace {

// Independent fine-grid trapezoid oracle for B(x,p,q).
double trapezoid_beta(double x, int p, int q, int n = 1 << 21) {
    auto f = [p, q](double t) {
        return std::pow(t, p - 1) * std::pow(1.0 - t, q - 1);
    };
    const double h = x / n;
    double acc = 0.5 * (f(1e-300) + f(x));
    for (int i = 1; i < n; ++i) acc += f(i * h);
    return acc * h;
}

const Prior kUniform = Prior::uniform();

}  // namespace

TEST_CASE("binomial coefficients") {
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(19, 1) == 19.0);
    CHECK(binomial(62, 31) == 4512362238436554816.0);  // exact integer branch
    // Pascal identity across the exact/log-space boundary at n = 63
    CHECK(binomial(63, 31) ==
          doctest::Approx(binomial(62, 30) + binomial(62, 31)).epsilon(1e-12));
    CHECK(binomial(4, 7) == 0.0);
}

TEST_CASE("incomplete beta: closed form against analytic antiderivatives") {
    CHECK(incomplete_beta(0.5, 1, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(incomplete_beta(0.3, 2, 1) == doctest::Approx(0.045).epsilon(1e-13));
}

TEST_CASE("incomplete beta vanishes when p*q == 0") {
    CHECK(incomplete_beta(0.7, 0, 3) == 0.0);
    CHECK(incomplete_beta(0.2, 4, 0) == 0.0);
    CHECK(incomplete_beta(0.2, 0, 0) == 0.0);
}

TEST_CASE("incomplete beta against the trapezoid oracle") {
    CHECK(std::abs(incomplete_beta(0.4, 3, 2) - trapezoid_beta(0.4, 3, 2)) < 1e-10);
    CHECK(std::abs(incomplete_beta(0.65, 5, 4) - trapezoid_beta(0.65, 5, 4)) < 1e-10);
    CHECK(std::abs(incomplete_beta(0.25, 1, 6) - trapezoid_beta(0.25, 1, 6)) < 1e-10);
}

TEST_CASE("incomplete beta domain errors") {
    CHECK_THROWS_AS(incomplete_beta(0.0, 2, 2), DomainError);
    CHECK_THROWS_AS(incomplete_beta(1.0, 2, 2), DomainError);
    CHECK_THROWS_AS(incomplete_beta(-0.1, 2, 2), DomainError);
    CHECK_THROWS_AS(incomplete_beta(0.5, -1, 2), DomainError);
}

TEST_CASE("beta tail identity: q B(x,p,q) = (p-1) B(x,p-1,q+1) - x^{p-1}(1-x)^q") {
    for (int p = 2; p <= 6; ++p) {
        for (int q = 2; q <= 6; ++q) {
            for (int i = 1; i <= 19; ++i) {
                const double x = i / 20.0;
                const double lhs = q * incomplete_beta(x, p, q);
                const double rhs = (p - 1) * incomplete_beta(x, p - 1, q + 1) -
                                   std::pow(x, p - 1) * std::pow(1.0 - x, q);
                CHECK(std::abs(lhs - rhs) < 1e-9);
            }
        }
    }
}

TEST_CASE("order statistic cdf: analytic and boundary conventions") {
    CHECK(order_stat_cdf(1, 4, 0.5, kUniform) == doctest::Approx(0.0625).epsilon(1e-13));
    CHECK(order_stat_cdf(0, 7, 0.3, kUniform) == 0.0);
    CHECK(order_stat_cdf(8, 7, 0.3, kUniform) == 0.0);  // the (n, n-1) convention
    CHECK_THROWS_AS(order_stat_cdf(-1, 7, 0.3, kUniform), DomainError);
    CHECK_THROWS_AS(order_stat_cdf(9, 7, 0.3, kUniform), DomainError);
}

TEST_CASE("order statistic cdf against a Monte Carlo oracle") {
    // second-largest of three uniforms at 0.5, one million triples
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = 1'000'000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        double a = u(gen), b = u(gen), c = u(gen);
        const double second = a + b + c - std::max({a, b, c}) - std::min({a, b, c});
        if (second <= 0.5) ++hits;
    }
    const double emp = static_cast<double>(hits) / n;
    const double want = order_stat_cdf(2, 3, 0.5, kUniform);
    const double se = std::sqrt(want * (1 - want) / n);
    CHECK(std::abs(emp - want) < 4.0 * se);
}

TEST_CASE("order statistic pdf: analytic value and finite differences") {
    CHECK(order_stat_pdf(1, 2, 0.5, kUniform) == doctest::Approx(1.0).epsilon(1e-13));
    const double h = 1e-5;
    for (int ell = 1; ell <= 4; ++ell) {
        for (int i = 1; i <= 9; ++i) {
            const double x = i / 10.0;
            const double fd = (order_stat_cdf(ell, 4, x + h, kUniform) -
                               order_stat_cdf(ell, 4, x - h, kUniform)) /
                              (2 * h);
            CHECK(std::abs(fd - order_stat_pdf(ell, 4, x, kUniform)) < 1e-6);
        }
    }
    CHECK_THROWS_AS(order_stat_pdf(0, 4, 0.5, kUniform), DomainError);
    CHECK_THROWS_AS(order_stat_pdf(5, 4, 0.5, kUniform), DomainError);
}

TEST_CASE("rank probabilities sum to one and differentiate the cdf") {
    const Prior p = Prior::power(2.0);
    for (double x : {0.2, 0.5, 0.8}) {
        double total = 0.0;
        for (int rank = 1; rank <= 8; ++rank) total += rank_probability(rank, 7, x, p);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    const double h = 1e-6;
    for (int rank = 1; rank <= 5; ++rank) {
        const double fd =
            (rank_probability(rank, 4, 0.6 + h, p) - rank_probability(rank, 4, 0.6 - h, p)) /
            (2 * h);
        CHECK(std::abs(fd - rank_probability_derivative(rank, 4, 0.6, p)) < 1e-6);
    }
}

TEST_CASE("belief normalizer: n2 = n1 collapses to one") {
    for (int n : {2, 5, 10}) {
        for (double x : {0.1, 0.5, 0.9}) {
            CHECK(std::abs(belief_normalizer(x, n, n) - 1.0) < 1e-12);
            CHECK(std::abs(scaled_belief_normalizer(x, n, n) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("belief normalizer: closed forms for n2 = 2") {
    // I(x, n1, 2) = 1 - x + x^{n1-1}/(n1-1)
    CHECK(belief_normalizer(0.5, 5, 2) == doctest::Approx(0.515625).epsilon(1e-13));
    for (int n1 : {3, 6, 11}) {
        for (int i = 1; i <= 9; ++i) {
            const double x = i / 10.0;
            const double want = 1.0 - x + std::pow(x, n1 - 1) / (n1 - 1);
            CHECK(belief_normalizer(x, n1, 2) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("belief normalizer against direct quadrature of its defining integral") {
    // I(x,n1,n2) = (1-x)^{n2-1} + (n2-1) int_0^x t^{n1-n2}(1-t)^{n2-2} dt
    const int n1 = 6, n2 = 3;
    const double x = 0.4;
    const double direct =
        std::pow(1.0 - x, n2 - 1) + (n2 - 1) * trapezoid_beta(x, n1 - n2 + 1, n2 - 1);
    CHECK(std::abs(belief_normalizer(x, n1, n2) - direct) < 1e-10);
}

TEST_CASE("scaled normalizer: polynomial case and the x -> 1 limit") {
    for (int i = 1; i <= 19; ++i) {
        const double x = i / 20.0;
        CHECK(scaled_belief_normalizer(x, 3, 2) ==
              doctest::Approx(x * x - 2.0 * x + 2.0).epsilon(1e-12));
    }
    CHECK(scaled_belief_normalizer(0.5, 3, 2) == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(std::abs(scaled_belief_normalizer(1.0 - 1e-9, 20, 5) - 1.0) < 1e-6);
    CHECK_THROWS_AS(scaled_belief_normalizer(0.5, 5, 1), DomainError);
    CHECK_THROWS_AS(scaled_belief_normalizer(0.5, 5, 6), DomainError);
}

TEST_CASE("J is at least one, equal iff n2 == n1 (200-point grids)") {
    for (int n1 = 2; n1 <= 20; ++n1) {
        for (int n2 = 2; n2 <= n1; ++n2) {
            double max_excess = 0.0;
            for (int i = 1; i <= 200; ++i) {
                const double x = i / 201.0;
                const double j = scaled_belief_normalizer(x, n1, n2);
                CHECK(j >= 1.0 - 1e-12);
                if (n2 == n1) CHECK(std::abs(j - 1.0) <= 1e-12);
                max_excess = std::max(max_excess, j - 1.0);
            }
            if (n2 < n1) CHECK(max_excess > 1e-9);
        }
    }
}

TEST_CASE("J is nonincreasing in x, strictly decreasing when n2 < n1") {
    for (int n1 : {3, 7, 12, 20}) {
        for (int n2 = 2; n2 <= n1; ++n2) {
            double prev = scaled_belief_normalizer(1.0 / 201.0, n1, n2);
            for (int i = 2; i <= 200; ++i) {
                const double j = scaled_belief_normalizer(i / 201.0, n1, n2);
                CHECK(j <= prev + 1e-12);
                prev = j;
            }
            if (n2 < n1) {
                CHECK(scaled_belief_normalizer(0.1, n1, n2) -
                          scaled_belief_normalizer(0.9, n1, n2) >
                      1e-9);
            }
        }
    }
}

TEST_CASE("J decreasing in n2 above the threshold, and on the upper n2 range") {
    for (int n1 : {6, 11, 20}) {
        const double a_hat = n2_monotonicity_threshold(n1);
        CHECK(a_hat >= 0.0);
        CHECK(a_hat < 1.0);
        // part (i): for x >= a_hat the whole range [2, n1] is monotone
        for (int i = 0; i <= 40; ++i) {
            const double x = a_hat + (0.999999 - a_hat) * i / 40.0;
            for (int n2 = 3; n2 <= n1; ++n2) {
                CHECK(scaled_belief_normalizer(x, n1, n2) <=
                      scaled_belief_normalizer(x, n1, n2 - 1) + 1e-9);
            }
        }
        // part (ii): for every x the upper range [floor(n1/2)+2, n1] is monotone
        for (int i = 1; i <= 200; ++i) {
            const double x = i / 201.0;
            for (int n2 = n1 / 2 + 3; n2 <= n1; ++n2) {
                CHECK(scaled_belief_normalizer(x, n1, n2) <=
                      scaled_belief_normalizer(x, n1, n2 - 1) + 1e-9);
            }
        }
    }
}
