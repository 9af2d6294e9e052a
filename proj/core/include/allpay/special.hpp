#pragma once

#include "allpay/prior.hpp"

namespace allpay {

// C(n,k) as a double: exact 64-bit integer arithmetic for n <= 62, log-space
// via lgamma above that (C(63,31) would overflow a signed 64-bit product).
double binomial(int n, int k);

// Complete beta function Beta(p,q) = (p-1)!(q-1)!/(p+q-1)! for integer
// p,q >= 1, computed as a product of ratios.
double beta_function(int p, int q);

// Regularized incomplete beta for integer p,q >= 1:
//   I_x(p,q) = sum_{j=p}^{p+q-1} C(p+q-1,j) x^j (1-x)^{p+q-1-j},
// a stable positive binomial sum.
double incomplete_beta_regularized(double x, int p, int q);

// B(x,p,q) = int_0^x t^{p-1} (1-t)^{q-1} dt for integer p,q >= 0, evaluated
// in closed form as Beta(p,q) * I_x(p,q). Returns exactly 0 when p*q == 0.
// Throws DomainError for x outside (0,1) or negative parameters.
double incomplete_beta(double x, int p, int q);

// CDF of the ell-th largest among n iid draws from the prior:
//   F_(ell,n)(x) = sum_{j=n-ell+1}^{n} C(n,j) F(x)^j (1-F(x))^{n-j}.
// Boundary conventions: ell == 0 and ell == n+1 both return 0.
double order_stat_cdf(int ell, int n, double x, const Prior& prior);

// Density of the ell-th largest among n iid draws, 1 <= ell <= n:
//   n!/((n-ell)!(ell-1)!) F^{n-ell} (1-F)^{ell-1} f.
double order_stat_pdf(int ell, int n, double x, const Prior& prior);

// Probability that a player with ability x places exactly rank-th among
// others+1 contestants whose abilities are iid draws from the prior:
//   C(others, rank-1) (1-F(x))^{rank-1} F(x)^{others-rank+1}.
// Valid for 1 <= rank <= others+1 (rank == others+1 means last place).
double rank_probability(int rank, int others, double x, const Prior& prior);

// d/dx of rank_probability, used by the equilibrium integrands.
double rank_probability_derivative(int rank, int others, double x, const Prior& prior);

// Admission-signal normalizer
//   I(x,n1,n2) = (1-x)^{n2-1} + (n2-1) B(x, n1-n2+1, n2-1),
// the Bayes denominator of an admitted player's posterior evaluated at
// x = F(a_i). Identically 1 when n2 == n1. Requires 2 <= n2 <= n1; accepts
// x in the closed interval [0,1].
double belief_normalizer(double x, int n1, int n2);

// J(x,n1,n2) = C(n1-1, n2-1) * I(x,n1,n2): the denominator that shades the
// equilibrium effort of the entry-restricted contest. J >= 1 always, with
// equality (for all x) iff n2 == n1, and J is nonincreasing in x.
double scaled_belief_normalizer(double x, int n1, int n2);

// Threshold a-hat for the n2-monotonicity of J at fixed n1: the largest root
// in (0,1), over n2 in [3, n1], of
//   r(x) = (n2-1) (sum_{i=1}^{n1-n2} x^i + 2) - n1.
// For x >= a-hat, J(x,n1,n2) is decreasing in n2 over the whole range [2,n1];
// below it the monotonicity only holds on [floor(n1/2)+2, n1]. Returns 0 when
// r has no positive root for any n2.
double n2_monotonicity_threshold(int n1);

}  // namespace allpay
