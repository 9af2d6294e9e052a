#pragma once

#include <cstddef>
#include <functional>

namespace allpay {

// Adaptive-Simpson settings shared by every analytic module.
struct Quadrature {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_subdivisions = std::size_t{1} << 16;
};

// Integral of f over [lo, hi] by adaptive Simpson with interval bisection.
// The integrand is never evaluated at the closed endpoints: the two endpoint
// samples are nudged a relative 1e-13 inward, so integrands defined only on
// the open interval are safe. Deterministic for fixed inputs.
//
// Throws NumericError when max_subdivisions interval splits are exceeded and
// DomainError for lo > hi or nonpositive tolerances.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Quadrature& q = {});

}  // namespace allpay
