#include "crossperc/tasep.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <string>

#include "crossperc/errors.hpp"

namespace crossperc {

TasepState::TasepState(int half_width)
    : half_width_(half_width), occupancy_(static_cast<std::size_t>(2 * std::max(half_width, 0)), 0) {
  require_parameter(half_width >= 1, "TASEP half-width K must be >= 1");
}

TasepState::TasepState(int half_width, std::vector<std::uint8_t> occupancy)
    : half_width_(half_width), occupancy_(std::move(occupancy)) {
  require_parameter(half_width >= 1, "TASEP half-width K must be >= 1");
  require_contract(occupancy_.size() == static_cast<std::size_t>(2 * half_width),
                   "TASEP state needs exactly 2K sites");
  for (auto &bit : occupancy_)
    bit = bit ? 1 : 0;
}

TasepState TasepState::step_configuration(int half_width) {
  TasepState state(half_width);
  for (int p = 0; p < half_width; ++p)
    state.occupancy_[static_cast<std::size_t>(p)] = 1;
  return state;
}

TasepState TasepState::decode(int half_width, std::uint32_t code) {
  TasepState state(half_width);
  require_parameter(2 * half_width <= 32, "state encoding needs 2K <= 32");
  for (std::size_t p = 0; p < state.occupancy_.size(); ++p)
    state.occupancy_[p] = (code >> p) & 1U;
  return state;
}

std::size_t TasepState::position(int site) const {
  require_contract(site > -half_width_ && site <= half_width_,
                   "site " + std::to_string(site) + " outside [-K+1, K]");
  return static_cast<std::size_t>(site + half_width_ - 1);
}

bool TasepState::occupied(int site) const { return occupancy_[position(site)] != 0; }

void TasepState::set(int site, bool particle) { occupancy_[position(site)] = particle ? 1 : 0; }

int TasepState::particle_count() const noexcept {
  int count = 0;
  for (const auto bit : occupancy_)
    count += bit;
  return count;
}

std::uint32_t TasepState::encode() const {
  require_parameter(occupancy_.size() <= 32, "state encoding needs 2K <= 32");
  std::uint32_t code = 0;
  for (std::size_t p = 0; p < occupancy_.size(); ++p)
    code |= static_cast<std::uint32_t>(occupancy_[p]) << p;
  return code;
}

void TasepRates::validate() const {
  require_probability(alpha, "alpha");
  require_probability(beta, "beta");
  require_probability(gamma, "gamma");
}

bool TasepRates::interior() const noexcept {
  const auto inside = [](double r) { return r > 0.0 && r < 1.0; };
  return inside(alpha) && inside(beta) && inside(gamma);
}

bool event_enabled(const TasepState &state, int row) {
  const int K = state.half_width();
  require_contract(row >= -K && row <= K, "event row outside [-K, K]");
  if (row == -K)
    return !state.occupied(-K + 1);
  if (row == K)
    return state.occupied(K);
  return state.occupied(row) && !state.occupied(row + 1);
}

TasepState apply_events(const TasepState &state, std::span<const std::uint8_t> fire) {
  const int K = state.half_width();
  const auto n = state.sites();
  require_contract(fire.size() == n + 1, "expected 2K+1 event flags, got " + std::to_string(fire.size()));
  const auto old = state.bits();
  std::vector<std::uint8_t> next(old.begin(), old.end());
  // Slot s = row + K; a jump from position p (site p-K+1) is slot p + 1.
  if (fire[0] && !old[0])
    next[0] = 1;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    if (fire[p + 1] && old[p] && !old[p + 1]) {
      assert(next[p + 1] == 0 && "exclusion: jump into an occupied site");
      next[p] = 0;
      next[p + 1] = 1;
    }
  }
  if (fire[n] && old[n - 1]) {
    assert(next[n - 1] == 1);
    next[n - 1] = 0;
  }
  return TasepState(K, std::move(next));
}

namespace {

double slot_rate(const TasepRates &rates, std::size_t slot, std::size_t slots) {
  if (slot == 0)
    return rates.beta;
  if (slot + 1 == slots)
    return rates.gamma;
  return rates.alpha;
}

} // namespace

TasepState tasep_step(const TasepState &state, const TasepRates &rates,
                      std::span<const double> draws) {
  rates.validate();
  const auto slots = state.sites() + 1;
  require_contract(draws.size() == slots,
                   "expected " + std::to_string(slots) + " draws, got " + std::to_string(draws.size()));
  std::vector<std::uint8_t> fire(slots);
  for (std::size_t s = 0; s < slots; ++s)
    fire[s] = draws[s] < slot_rate(rates, s, slots) ? 1 : 0;
  return apply_events(state, fire);
}

TasepState tasep_step(const TasepState &state, const TasepRates &rates, SplitMix64 &rng) {
  const std::array<BernoulliThreshold, 3> thresholds{
      BernoulliThreshold(rates.beta), BernoulliThreshold(rates.alpha), BernoulliThreshold(rates.gamma)};
  const auto slots = state.sites() + 1;
  std::vector<std::uint8_t> fire(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    const auto &t = s == 0 ? thresholds[0] : (s + 1 == slots ? thresholds[2] : thresholds[1]);
    fire[s] = t.fires(rng()) ? 1 : 0;
  }
  return apply_events(state, fire);
}

TasepState coupled_tasep_step(const TasepState &state, const EdgeColumn &col) {
  require_contract(col.horizontal.size() == state.sites() + 1,
                   "edge column and TASEP state disagree on K");
  std::vector<std::uint8_t> fire(col.horizontal.size());
  for (std::size_t s = 0; s < fire.size(); ++s)
    fire[s] = col.horizontal[s] ? 0 : 1;
  return apply_events(state, fire);
}

bool is_pair_state(int half_width, std::uint32_t code) noexcept {
  const auto zero = static_cast<unsigned>(half_width - 1);
  return ((code >> zero) & 1U) == 1U && ((code >> (zero + 1)) & 1U) == 0U;
}

namespace {

struct Event {
  std::uint32_t flip;
  int kind;  // 0 entry, 1 jump, 2 exit
};

std::vector<Event> enabled_events(int half_width, std::uint32_t code) {
  const int n = 2 * half_width;
  std::vector<Event> events;
  if (!(code & 1U))
    events.push_back({1U, 0});
  for (int p = 0; p + 1 < n; ++p)
    if (((code >> p) & 1U) && !((code >> (p + 1)) & 1U))
      events.push_back({(1U << p) | (1U << (p + 1)), 1});
  if ((code >> (n - 1)) & 1U)
    events.push_back({1U << (n - 1), 2});
  return events;
}

template <class Scalar>
TransitionTable<Scalar> build_table(int half_width, const std::array<Scalar, 3> &fire_prob) {
  require_parameter(half_width >= 1, "TASEP half-width K must be >= 1");
  if (half_width > kMaxDenseHalfWidth)
    throw CapacityError("dense TASEP state space needs K <= " + std::to_string(kMaxDenseHalfWidth) +
                        ", got K = " + std::to_string(half_width));
  const std::array<Scalar, 3> stay_prob{Scalar(1) - fire_prob[0], Scalar(1) - fire_prob[1],
                                        Scalar(1) - fire_prob[2]};
  const std::uint32_t states = 1U << (2 * half_width);
  TransitionTable<Scalar> table;
  table.half_width = half_width;
  table.row_start.reserve(states + 1);
  table.row_start.push_back(0);
  for (std::uint32_t code = 0; code < states; ++code) {
    const auto events = enabled_events(half_width, code);
    const std::uint32_t outcomes = 1U << events.size();
    for (std::uint32_t subset = 0; subset < outcomes; ++subset) {
      std::uint32_t next = code;
      Scalar p(1);
      for (std::size_t e = 0; e < events.size(); ++e) {
        const auto kind = static_cast<std::size_t>(events[e].kind);
        if ((subset >> e) & 1U) {
          next ^= events[e].flip;
          p *= fire_prob[kind];
        } else {
          p *= stay_prob[kind];
        }
      }
      if (p == Scalar(0))
        continue;
      table.target.push_back(next);
      table.probability.push_back(std::move(p));
    }
    table.row_start.push_back(static_cast<std::uint32_t>(table.target.size()));
  }
  return table;
}

} // namespace

TransitionTable<double> build_transition_table(int half_width, const TasepRates &rates) {
  rates.validate();
  return build_table<double>(half_width, {rates.beta, rates.alpha, rates.gamma});
}

TransitionTable<Rational> build_transition_table(int half_width, const Rational &eps) {
  require_parameter(eps >= 0 && eps <= 1, "eps must lie in [0,1]");
  return build_table<Rational>(half_width, {eps, eps, eps});
}

} // namespace crossperc
