#include "crossperc/closed_form.hpp"

#include <cmath>
#include <string>

#include "crossperc/errors.hpp"

namespace crossperc {

Integer binomial(unsigned n, unsigned k) {
  if (k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  Integer c = 1;
  for (unsigned i = 0; i < k; ++i) {
    c *= n - i;
    c /= i + 1;  // exact: c is now C(n, i+1) * (i+1)! / (i+1)!
  }
  return c;
}

Rational a_eps(int half_width, const Rational &eps) {
  require_parameter(half_width >= 1, "A_eps(K) needs K >= 1");
  require_parameter(eps >= 0 && eps <= 1, "eps must lie in [0,1]");
  const auto K = static_cast<unsigned>(half_width);
  const Rational keep = 1 - eps;
  Rational sum = 0;
  Rational power = 1;
  Integer c_k = 1;  // C(K, k), advanced by C(K,k+1) = C(K,k) (K-k)/(k+1)
  for (unsigned k = 1; k <= K; ++k) {
    c_k = c_k * (K - k + 1) / k;
    const Integer c_next = c_k * (K - k) / (k + 1);
    power *= keep;
    if (c_next != 0)
      sum += Rational(c_k * c_next) * power;
  }
  return sum / K;
}

namespace {

long double a_eps_extended(int half_width, double eps) {
  const long double K = half_width;
  const long double keep = 1.0L - static_cast<long double>(eps);
  long double term = K * K * (K - 1.0L) / 2.0L * keep;  // k = 1
  long double sum = term;
  for (int k = 1; k < half_width; ++k) {
    const long double kk = k;
    term *= keep * (K - kk) * (K - kk - 1.0L) / ((kk + 1.0L) * (kk + 2.0L));
    sum += term;
  }
  return sum / K;
}

} // namespace

double a_eps(int half_width, double eps) {
  require_parameter(half_width >= 1, "A_eps(K) needs K >= 1");
  require_probability(eps, "eps");
  return static_cast<double>(a_eps_extended(half_width, eps));
}

Rational nu_pair_formula(int half_width, const Rational &eps) {
  require_parameter(eps >= 0 && eps <= 1, "eps must lie in [0,1]");
  if (eps == 1)
    throw DegenerateError("closed-form nu is 0/0 at eps = 1");
  const Rational a = a_eps(half_width, eps);
  return a / (eps * a + a_eps(half_width + 1, eps));
}

double nu_pair_formula(int half_width, double eps) {
  require_probability(eps, "eps");
  if (eps == 1.0)
    throw DegenerateError("closed-form nu is 0/0 at eps = 1");
  require_parameter(half_width >= 1, "A_eps(K) needs K >= 1");
  // The sums outgrow double range near K = 500; take the ratio in long double.
  const long double a = a_eps_extended(half_width, eps);
  const long double b = a_eps_extended(half_width + 1, eps);
  return static_cast<double>(a / (static_cast<long double>(eps) * a + b));
}

double nu_limit_K(double eps) {
  require_probability(eps, "eps");
  return 1.0 / (2.0 * (1.0 + std::sqrt(1.0 - eps)));
}

} // namespace crossperc
