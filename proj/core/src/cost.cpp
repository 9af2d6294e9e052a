#include "allpay/cost.hpp"

#include <cmath>

#include "allpay/errors.hpp"

namespace allpay {

CostFn CostFn::linear() { return CostFn(1.0, "linear"); }

CostFn CostFn::power(double k) {
    if (!(k >= 1.0) || !std::isfinite(k))
        throw DomainError("cost: power exponent must be >= 1");
    return CostFn(k, k == 1.0 ? "linear" : "power:" + std::to_string(k));
}

double CostFn::g(double e) const {
    if (e < 0.0) throw DomainError("cost: effort must be nonnegative");
    return k_ == 1.0 ? e : std::pow(e, k_);
}

double CostFn::g_inverse(double y) const {
    if (y < 0.0) throw DomainError("cost: g_inverse argument must be nonnegative");
    return k_ == 1.0 ? y : std::pow(y, 1.0 / k_);
}

double CostFn::g_prime(double e) const {
    if (e < 0.0) throw DomainError("cost: effort must be nonnegative");
    return k_ == 1.0 ? 1.0 : k_ * std::pow(e, k_ - 1.0);
}

}  // namespace allpay
