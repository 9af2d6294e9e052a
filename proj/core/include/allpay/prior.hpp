#pragma once

#include <functional>
#include <string>
#include <utility>

namespace allpay {

// Ability distribution on the open interval (0,1): cdf F, density f, and the
// inverse cdf used by the samplers. Built-in families are uniform and power
// (F(x) = x^theta); arbitrary (cdf, pdf, inverse-cdf) triples are accepted
// for tests and extensions. Immutable after construction.
class Prior {
public:
    static Prior uniform();
    static Prior power(double theta);  // theta > 0; power(1) == uniform
    static Prior custom(std::function<double(double)> cdf,
                        std::function<double(double)> pdf,
                        std::function<double(double)> inverse_cdf,
                        std::string name = "custom");

    double cdf(double x) const { return cdf_(x); }
    double pdf(double x) const { return pdf_(x); }
    double inverse_cdf(double u) const { return inv_(u); }

    const std::string& name() const { return name_; }
    bool is_uniform() const { return uniform_; }

private:
    Prior(std::function<double(double)> cdf, std::function<double(double)> pdf,
          std::function<double(double)> inv, std::string name, bool uniform)
        : cdf_(std::move(cdf)),
          pdf_(std::move(pdf)),
          inv_(std::move(inv)),
          name_(std::move(name)),
          uniform_(uniform) {}

    std::function<double(double)> cdf_, pdf_, inv_;
    std::string name_;
    bool uniform_ = false;
};

// Ability grids are clamped inside the open interval.
inline constexpr double kAbilityLo = 1e-6;
inline constexpr double kAbilityHi = 1.0 - 1e-6;

}  // namespace allpay
