// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "crossperc/closed_form.hpp"
#include "crossperc/correspondence.hpp"
#include "crossperc/event_a.hpp"
#include "crossperc/experiment.hpp"
#include "crossperc/plane.hpp"
#include "crossperc/stationary.hpp"
#include "crossperc/strip.hpp"
#include "crossperc/strip_estimator.hpp"
#include "crossperc/tasep.hpp"

using namespace crossperc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *pattern, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return buffer;
}

Outcome coupling_exactness() {
  std::uint64_t mismatches = 0, steps = 0;
  for (int K = 1; K <= 5; ++K)
    for (const double eps : {0.1, 0.3, 0.5}) {
      const auto report = verify_coupling(K, eps, 10000, 1000 + static_cast<std::uint64_t>(K));
      mismatches += report.mismatches;
      steps += report.steps_checked;
    }
  std::uint64_t exhaustive = 0, exhaustive_bad = 0;
  for (int K = 1; K <= 2; ++K) {
    const auto slots = static_cast<std::uint32_t>(2 * K + 1);
    for (std::uint32_t code = 0; code < (1U << (2 * K)); ++code) {
      const auto state = TasepState::decode(K, code);
      const auto profile = reconstruct_profile(state, 0, 0);
      for (std::uint32_t mask = 0; mask < (1U << slots); ++mask) {
        auto col = EdgeColumn::uniform(StripGeometry(K, Model::Cross), true);
        for (std::uint32_t r = 0; r < slots; ++r)
          col.horizontal[r] = (mask >> r) & 1U;
        const auto next_profile = cross_step(profile, col);
        const auto next_state = coupled_tasep_step(state, col);
        bool ok = extract_particles(next_profile) == next_state;
        for (int j = -K; j <= K && ok; ++j)
          ok = next_profile.at(j) - profile.at(j) == reconstruct_increment(state, next_state, j);
        ++exhaustive;
        exhaustive_bad += !ok;
      }
    }
  }
  return {mismatches == 0 && exhaustive_bad == 0,
          fmt("%llu sampled steps, %llu mismatches; %llu exhaustive pairs, %llu mismatches",
              (unsigned long long)steps, (unsigned long long)mismatches,
              (unsigned long long)exhaustive, (unsigned long long)exhaustive_bad)};
}

Outcome dp_vs_oracle() {
  SplitMix64 meta(2);
  int bad = 0;
  const int instances = 1000;
  for (int trial = 0; trial < instances; ++trial) {
    const int K = 1 + static_cast<int>(meta() % 8);
    const auto n = static_cast<std::int64_t>(1 + meta() % 200);
    const double eps = to_unit_interval(meta());
    const auto config = sample_strip(StripGeometry(K, Model::Cross), eps, n, meta());
    const auto field = shortest_path_field(config, {0, 0});
    DistanceProfile profile = initial_profile(K);
    bool ok = true;
    for (std::int64_t i = 0; ok; ++i) {
      for (int j = -K; j <= K; ++j) {
        const auto &d = field[static_cast<std::size_t>(i * (2 * K + 1) + j + K)];
        ok = ok && d && *d == profile.at(j);
      }
      if (i == n)
        break;
      profile = cross_step(profile, config.columns[static_cast<std::size_t>(i)]);
    }
    bad += !ok;
  }
  return {bad == 0, fmt("%d instances (K <= 8, n <= 200), %d disagreements", instances, bad)};
}

Outcome exact_sandwich() {
  const int K = 3;
  const Rational eps(1, 5);
  const auto curve = expected_distance_curve(K, eps, 500);
  const auto nu = stationary_exact_rational(K, eps).nu_pair;
  const Rational slope = 1 + 2 * eps * nu;
  int sandwich_bad = 0, monotone_bad = 0;
  Rational min_gap = 2 * K, max_gap = 0;
  for (int n = 1; n <= 500; ++n) {
    const Rational gap = curve[static_cast<std::size_t>(n)] - n * slope;
    if (gap < 0 || gap > 2 * K)
      ++sandwich_bad;
    if (gap < min_gap)
      min_gap = gap;
    if (gap > max_gap)
      max_gap = gap;
    if (n > 1 && curve[static_cast<std::size_t>(n)] / n > curve[static_cast<std::size_t>(n - 1)] / (n - 1))
      ++monotone_bad;
  }
  return {sandwich_bad == 0 && monotone_bad == 0,
          fmt("nu_exact = %.12f, gap in [%.6f, %.6f], %d sandwich and %d monotonicity violations",
              static_cast<double>(nu), static_cast<double>(min_gap), static_cast<double>(max_gap),
              sandwich_bad, monotone_bad)};
}

Outcome limit_at_019() {
  const double target = 0.263157894;
  const auto sim = nu_pair_simulated(50, TasepRates::uniform(0.19), 1'000'000, 10'000'000, 19, 100'000);
  const bool pass = sim.samples >= 10'000'000 && std::abs(sim.nu_pair - target) <= 0.01;
  return {pass, fmt("nu = %.6f +- %.6f over %llu samples, |diff| = %.6f", sim.nu_pair, sim.stderr_nu,
                    (unsigned long long)sim.samples, std::abs(sim.nu_pair - target))};
}

Outcome limit_small_eps() {
  const auto sim = nu_pair_simulated(100, TasepRates::uniform(0.01), 2'000'000, 10'000'000, 100, 200'000);
  return {sim.nu_pair >= 0.24 && sim.nu_pair <= 0.26,
          fmt("nu = %.6f +- %.6f over %llu samples", sim.nu_pair, sim.stderr_nu,
              (unsigned long long)sim.samples)};
}

Outcome formula_report() {
  auto spec = default_spec("nu-compare");
  spec.params["eps"] = "0.1,0.3";
  spec.params["K-max"] = "6";
  const auto a = run(spec);
  const auto b = run(spec);
  std::ostringstream csv_a, csv_b;
  write_csv(csv_a, a);
  write_csv(csv_b, b);
  bool ok = a.rows.size() == 12 && csv_a.str() == csv_b.str();
  int agree = 0, discrepant = 0;
  bool k1_flagged = true;
  double worst_residual = 0.0;
  for (const auto &row : a.rows) {
    ok = ok && row["nu_formula"].is_number() && row["nu_exact"].is_number();
    worst_residual = std::max(worst_residual, row["residual"].get<double>());
    const bool is_agree = row["status"] == "AGREE";
    agree += is_agree;
    discrepant += !is_agree;
    if (row["K"] == 1)
      k1_flagged = k1_flagged && row["status"] == "DISCREPANT" && row["nu_formula"].get<double>() == 0.0 &&
                   row["nu_exact"].get<double>() > 0.0;
  }
  ok = ok && k1_flagged && worst_residual <= kResidualTolerance;
  return {ok, fmt("%zu rows, %d AGREE, %d DISCREPANT, K=1 flagged: %s, max residual %.2e, reproducible: %s",
                  a.rows.size(), agree, discrepant, k1_flagged ? "yes" : "no", worst_residual,
                  csv_a.str() == csv_b.str() ? "yes" : "no")};
}

Outcome pathwise_bound() {
  const auto report = check_pathwise_bound(3, 60, 0.05, 1000, 7, 50'000'000);
  return {report.passed() && report.accepted >= 1000,
          fmt("%llu accepted of %llu drawn, %llu violations, max D^K - D^{K,d} = %lld (bound %d)",
              (unsigned long long)report.accepted, (unsigned long long)report.drawn,
              (unsigned long long)report.violations, (long long)report.max_excess, 3 * 3)};
}

Outcome event_a_probability() {
  bool ok = true;
  std::string detail;
  for (const double eps : {0.01, 0.02}) {
    const auto est = estimate_event_A_failure(4, 50, eps, 100'000, 8);
    ok = ok && est.within(4.0);
    detail += fmt("eps=%.2f: p_hat = %.5f +- %.5f vs bound %.3f; ", eps, est.p_hat, est.stderr_p, est.bound);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome time_constant() {
  bool ok = true;
  std::string detail;
  for (const double eps : {0.02, 0.05}) {
    const auto base = estimate_mu(eps, 400, 200, 400, 9);
    const auto wide = estimate_mu(eps, 400, 400, 400, 9);
    const double slope = (base.mu_hat - 1.0) / eps;
    const double shift = std::abs(wide.mu_hat - base.mu_hat);
    const bool in_band = slope >= 0.35 && slope <= 0.70;
    const bool below = base.mu_hat <= 1.0 + eps + 3.0 * base.stderr_mu;
    const bool stable = shift < 2.0 * base.stderr_mu;
    ok = ok && in_band && below && stable;
    detail += fmt("eps=%.2f: mu_hat = %.6f +- %.6f, (mu_hat-1)/eps = %.4f [%s], upper bound [%s], "
                  "doubling shift %.2e [%s]; ",
                  eps, base.mu_hat, base.stderr_mu, slope, in_band ? "ok" : "out of band",
                  below ? "ok" : "violated", shift, stable ? "ok" : "unstable");
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome lower_bound_consistency() {
  const auto report = lower_bound_check(30, 0.3, 10, 1000);
  return {report.passed(),
          fmt("%llu replicas: %llu equality, %llu domination, %llu monotonicity violations (%llu with D finite)",
              (unsigned long long)report.replicas, (unsigned long long)report.equality_violations,
              (unsigned long long)report.domination_violations,
              (unsigned long long)report.monotonicity_violations, (unsigned long long)report.plane_finite)};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"coupling exactness", coupling_exactness},
      {"DP equals shortest-path oracle", dp_vs_oracle},
      {"exact sandwich K=3 eps=1/5 n<=500", exact_sandwich},
      {"simulated nu K=50 eps=0.19", limit_at_019},
      {"simulated nu K=100 eps=0.01", limit_small_eps},
      {"formula-vs-oracle report", formula_report},
      {"pathwise bound on event A", pathwise_bound},
      {"event A probability", event_a_probability},
      {"time constant at desk scale", time_constant},
      {"lower-bound consistency", lower_bound_consistency},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !outcome.pass;
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
