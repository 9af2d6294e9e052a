#pragma once

#include <vector>

#include "allpay/cost.hpp"
#include "allpay/prior.hpp"

namespace allpay {

// A complete game instance: n1 registered players, the top n2 of them
// admitted, a nonincreasing nonnegative prize vector (zero-padded to length
// n2 by validate_spec), the common ability prior and the cost function.
struct ContestSpec {
    int n1 = 2;
    int n2 = 2;
    std::vector<double> prizes = {1.0};
    Prior prior = Prior::uniform();
    CostFn cost = CostFn::linear();
};

// Checks the model invariants and returns the spec with its prize vector
// zero-padded to length n2. Throws DomainError naming the first violation:
// n1 < 2, n2 < 2, n2 > n1, more prizes than admitted players, prizes not
// nonincreasing, or a negative prize.
ContestSpec validate_spec(ContestSpec spec);

// Winner-take-all prize vector [v, 0, ..., 0] of length n.
std::vector<double> wta_prizes(double v, int n);

}  // namespace allpay
