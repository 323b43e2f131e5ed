#include "crossperc/random.hpp"

#include <cmath>

#include "crossperc/errors.hpp"

namespace crossperc {

BernoulliThreshold::BernoulliThreshold(double p) : p_(p), threshold_(0), always_(false) {
  require_probability(p, "probability");
  if (p >= 1.0) {
    always_ = true;
  } else {
    // p < 1 so p * 2^64 < 2^64 and the conversion is in range.
    threshold_ = static_cast<std::uint64_t>(std::ldexp(p, 64));
  }
}

} // namespace crossperc
