#pragma once

// Closed-form stationary quantities of the synchronous TASEP with all
// three rates equal to eps, from its matrix-product solution.

#include "crossperc/rational.hpp"

namespace crossperc {

/// Binomial coefficient by the multiplicative Pascal recurrence, exact.
Integer binomial(unsigned n, unsigned k);

/// A_eps(K) = (1/K) sum_{k=1..K} C(K,k) C(K,k+1) (1-eps)^k.
Rational a_eps(int half_width, const Rational &eps);
/// Floating evaluation via the term ratio
///   a(K,k+1)/a(K,k) = (1-eps)(K-k)(K-k-1)/((k+1)(k+2))
/// in long double; matches the rational mode to 12 digits for K <= 60.
double a_eps(int half_width, double eps);

/// nu(bullet, circ) = A(K) / (eps A(K) + A(K+1)) as printed. DegenerateError at eps = 1.
Rational nu_pair_formula(int half_width, const Rational &eps);
double nu_pair_formula(int half_width, double eps);

/// lim_{K->oo} nu = (1 - sqrt(1-eps)) / (2 eps), evaluated as
/// 1 / (2 (1 + sqrt(1-eps))), which is 1/4 at eps = 0.
double nu_limit_K(double eps);

} // namespace crossperc
