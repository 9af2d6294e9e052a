#include "allpay/contest.hpp"

#include <cmath>

#include "allpay/errors.hpp"

namespace allpay {

ContestSpec validate_spec(ContestSpec spec) {
    if (spec.n1 < 2) throw DomainError("contest: n1 must be at least 2");
    if (spec.n2 < 2) throw DomainError("contest: n2 < 2");
    if (spec.n2 > spec.n1) throw DomainError("contest: n2 > n1");
    if (static_cast<int>(spec.prizes.size()) > spec.n2)
        throw DomainError("contest: more prizes than admitted players");
    for (std::size_t i = 0; i < spec.prizes.size(); ++i) {
        if (!std::isfinite(spec.prizes[i]) || spec.prizes[i] < 0.0)
            throw DomainError("contest: negative prize");
        if (i > 0 && spec.prizes[i] > spec.prizes[i - 1])
            throw DomainError("contest: prizes not nonincreasing");
    }
    spec.prizes.resize(spec.n2, 0.0);
    return spec;
}

std::vector<double> wta_prizes(double v, int n) {
    if (v < 0.0) throw DomainError("contest: negative prize");
    std::vector<double> prizes(static_cast<std::size_t>(n > 0 ? n : 0), 0.0);
    if (!prizes.empty()) prizes[0] = v;
    return prizes;
}

}  // namespace allpay
