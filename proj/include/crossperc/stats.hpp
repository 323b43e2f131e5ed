#pragma once

#include <cmath>
#include <cstdint>

namespace crossperc {

/// Count / mean / sum of squared deviations; merge() is Chan's pairwise update.
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats &other) noexcept {
    if (other.count == 0)
      return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / n;
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) / n;
    count += other.count;
  }

  double variance() const noexcept { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double standard_error() const noexcept {
    return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

} // namespace crossperc
