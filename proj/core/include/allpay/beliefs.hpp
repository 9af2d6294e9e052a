#pragma once

#include <span>

#include "allpay/prior.hpp"
#include "allpay/quadrature.hpp"

namespace allpay {

// Everything an admitted player's posterior depends on: her own ability, the
// contest sizes and the common prior. All posterior functions below condition
// on the admission signal.
struct PosteriorParams {
    double own_ability = 0.5;  // a_i in (0,1)
    int n1 = 2;
    int n2 = 2;
    Prior prior = Prior::uniform();
};

// Joint posterior density over the abilities of the other n2-1 admitted
// players. Two branches depending on whether the player's own ability lies
// below or above the weakest other admitted ability; the measure-zero tie
// takes the lower-branch (right-limit) value.
double joint_posterior_density(std::span<const double> others, const PosteriorParams& p);

// Marginal posterior density of a single opponent's ability. At a_j equal to
// the player's own ability the right limit is returned.
double marginal_posterior_pdf(double a_j, const PosteriorParams& p);

// Marginal posterior CDF in closed form (the two-case expressions; reduces
// to the prior cdf when n2 == n1).
double marginal_posterior_cdf(double a_j, const PosteriorParams& p);

// Jump of the marginal density at a_j = a_i (right minus left limit):
//   f(a_i) (1-F(a_i))^{n2-2} (1 - F(a_i)^{n1-n2}) / I(F(a_i), n1, n2).
// Zero when n2 == n1 and as a_i approaches either endpoint.
double belief_jump(const PosteriorParams& p);

// E[A_j] under the marginal posterior, by quadrature split at a_i.
double expected_opponent_ability(const PosteriorParams& p, const Quadrature& q = {});

// Closed form of the same expectation for the uniform prior: 1 - D(a_i)/2
// with D = (n2 B(a, n1-n2+1, n2) + (1-a)^{n2}) / I(a, n1, n2).
double expected_opponent_ability_uniform(const PosteriorParams& p);

// First-order stochastic dominance margin of the posterior over the prior:
// F(a_j) - marginal_posterior_cdf(a_j). Nonnegative; strictly positive at
// interior points when n2 < n1; identically zero when n2 == n1.
double dominance_margin(double a_j, const PosteriorParams& p);

}  // namespace allpay
