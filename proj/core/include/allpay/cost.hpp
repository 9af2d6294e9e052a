#pragma once

#include <string>

namespace allpay {

// Effort cost g: strictly increasing, continuous, differentiable, g(0) = 0.
// A player with ability a pays g(e)/a for effort e. Families: linear
// (g(e) = e) and power (g(e) = e^k, k >= 1).
class CostFn {
public:
    static CostFn linear();
    static CostFn power(double k);

    double g(double e) const;
    double g_inverse(double y) const;
    double g_prime(double e) const;

    double exponent() const { return k_; }
    const std::string& name() const { return name_; }

private:
    CostFn(double k, std::string name) : k_(k), name_(std::move(name)) {}
    double k_ = 1.0;
    std::string name_;
};

}  // namespace allpay
