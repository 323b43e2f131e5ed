#include "crossperc/event_a.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crossperc/errors.hpp"
#include "crossperc/parallel.hpp"
#include "crossperc/random.hpp"

namespace crossperc {

EventAEstimate estimate_event_A_failure(int half_width, std::int64_t n, double eps,
                                        std::uint64_t samples, std::uint64_t seed) {
  const StripGeometry geom(half_width, Model::Standard);
  require_probability(eps, "eps");
  require_parameter(n >= 1, "event A needs a box with n >= 1");
  require_parameter(samples >= 2, "event A estimate needs at least two samples");
  const Box box = event_box(geom, n);
  const auto failures = reduce_replicas<std::uint64_t>(
      samples,
      [&](std::uint64_t s, std::uint64_t &acc) {
        acc += check_event_A(sample_strip(geom, eps, n, derive_seed(seed, s)), box) ? 0 : 1;
      },
      [](std::uint64_t &into, const std::uint64_t &from) { into += from; });

  EventAEstimate out;
  out.half_width = half_width;
  out.n = n;
  out.eps = eps;
  out.samples = samples;
  out.failures = failures;
  out.p_hat = static_cast<double>(failures) / static_cast<double>(samples);
  out.stderr_p = std::sqrt(out.p_hat * (1.0 - out.p_hat) / static_cast<double>(samples));
  out.bound = 22.0 * half_width * static_cast<double>(n) * eps * eps;
  out.seed = seed;
  return out;
}

PathwiseBoundReport check_pathwise_bound(int half_width, std::int64_t n, double eps,
                                         std::uint64_t target, std::uint64_t seed,
                                         std::uint64_t max_draws) {
  const StripGeometry geom(half_width, Model::Standard);
  require_probability(eps, "eps");
  require_parameter(n >= 1, "pathwise bound needs n >= 1");
  const Box box = event_box(geom, n);

  PathwiseBoundReport out;
  out.half_width = half_width;
  out.n = n;
  out.eps = eps;
  out.seed = seed;
  out.max_excess = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t s = 0; s < max_draws && out.accepted < target; ++s) {
    const auto config = sample_strip(geom, eps, n, derive_seed(seed, s));
    ++out.drawn;
    if (!check_event_A(config, box))
      continue;
    ++out.accepted;
    const auto standard = standard_distance(config, n);
    if (!standard) {
      ++out.unreachable;
      continue;
    }
    const auto cross = cross_profile(config, n).at(0);
    out.max_excess = std::max(out.max_excess, *standard - cross);
    if (*standard > cross + 3 * half_width)
      ++out.violations;
  }
  return out;
}

} // namespace crossperc
