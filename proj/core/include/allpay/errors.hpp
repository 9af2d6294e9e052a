#pragma once

#include <stdexcept>
#include <string>

namespace allpay {

// Invalid inputs: bad parameters, malformed contest specs. The CLI maps
// these to exit code 2.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Numerical failures: quadrature non-convergence, negative effort potential,
// solver breakdown, Monte Carlo acceptance starvation. Exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace allpay
