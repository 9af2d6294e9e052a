#include "allpay/prior.hpp"

#include <cmath>

#include "allpay/errors.hpp"

namespace allpay {

Prior Prior::uniform() { return Prior::power(1.0); }

Prior Prior::power(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw DomainError("prior: power exponent must be positive");
    auto cdf = [theta](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return std::pow(x, theta);
    };
    auto pdf = [theta](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return theta * std::pow(x, theta - 1.0);
    };
    auto inv = [theta](double u) {
        if (u < 0.0 || u > 1.0)
            throw DomainError("prior: inverse_cdf argument outside [0,1]");
        return std::pow(u, 1.0 / theta);
    };
    const bool is_uniform = theta == 1.0;
    return Prior(cdf, pdf, inv, is_uniform ? "uniform" : "power:" + std::to_string(theta),
                 is_uniform);
}

Prior Prior::custom(std::function<double(double)> cdf, std::function<double(double)> pdf,
                    std::function<double(double)> inverse_cdf, std::string name) {
    if (!cdf || !pdf || !inverse_cdf)
        throw DomainError("prior: custom family needs cdf, pdf and inverse_cdf");
    return Prior(std::move(cdf), std::move(pdf), std::move(inverse_cdf), std::move(name),
                 false);
}

}  // namespace allpay
