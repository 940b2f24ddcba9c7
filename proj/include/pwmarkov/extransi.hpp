#pragma once

#include "pwmarkov/rational.hpp"

namespace pwm {

/// Certified enclosure of p(n) = exp(-1/n^2) and of p/(1-p), from
/// outward-rounded multiprecision evaluation. `ratio_ceiling` is P(n).
struct RatioEnclosure {
  unsigned long n = 0;
  Rational p_lower;
  Rational p_upper;
  Rational ratio_lower;
  Rational ratio_upper;
  BigInt ratio_ceiling;
  unsigned long precision_bits = 0;
};

/// Starts at 128 bits and doubles until ceil(ratio_lower) == ceil(ratio_upper);
/// throws PrecisionError past `max_precision_bits`.
RatioEnclosure enclose_extransi_ratio(unsigned long n, unsigned long max_precision_bits = 1UL << 16);

}  // namespace pwm
