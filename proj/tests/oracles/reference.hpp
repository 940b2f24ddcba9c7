#pragma once

// Test-only reference implementations, written straight from the map formulas.
// They deliberately avoid BranchSpec, CylinderBuilder and the tag recursion.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwmarkov/rational.hpp"

namespace ref {

using pwm::BigInt;
using pwm::Rational;

inline BigInt pow4(unsigned k) {
  BigInt v = 1;
  while (k--) v *= 4;
  return v;
}

inline unsigned ell(const BigInt& x) {
  unsigned n = 1;
  while (x > pow4(n)) ++n;
  return n;
}

inline BigInt t_at(const BigInt& k) {
  if (k % 2 == 0) return 0;
  return pow4(ell(k)) + 1;
}

// Linear interpolation of the integer values.
inline Rational t_map(const Rational& x) {
  const BigInt k = x.floor();
  const Rational a(t_at(k)), b(t_at(k + 1));
  return a + (b - a) * (x - Rational(k));
}

inline Rational kek_map(const Rational& x) {
  const BigInt k = x.floor();
  if (x < Rational(3)) return Rational(4) * (x - Rational(k));
  return Rational(4) * x - Rational(3 * k) - Rational(2);
}

inline std::vector<BigInt> posrec_s(std::size_t count) {
  std::vector<BigInt> s{1, 3};
  while (s.size() < count) s.push_back(4 * s.back() + 1);
  return s;
}

inline BigInt posrec_h(const BigInt& n) {
  const auto s = posrec_s(80);
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (s[k] / 2 + 1 == n) return s[k + 1];
  }
  return 3;
}

inline Rational posrec_map(const Rational& x) {
  const BigInt k = x.floor();
  return Rational(posrec_h(k + 1)) * (x - Rational(k));
}

// Point of [i-1, i] that T sends to y (T restricted there is a bijection onto its image).
inline Rational t_inverse_on(const BigInt& i, const Rational& y) {
  const Rational a(t_at(i - 1)), b(t_at(i));
  return Rational(i - 1) + (y - a) / (b - a);
}

// Cylinder of a T-word by pulling J_{i_n} back one symbol at a time.
inline std::pair<Rational, Rational> t_cylinder_by_preimages(const std::vector<BigInt>& word) {
  Rational lo(word.back() - 1), hi(word.back());
  for (std::size_t k = word.size() - 1; k-- > 0;) {
    const Rational a = t_inverse_on(word[k], lo), b = t_inverse_on(word[k], hi);
    lo = pwm::min(a, b);
    hi = pwm::max(a, b);
  }
  return {lo, hi};
}

// exp(-t) for rational 0 < t <= 1 from the alternating Taylor series: partial
// sums bracket the value once the terms decrease.
inline std::pair<Rational, Rational> exp_neg_enclosure(const Rational& t, int terms = 40) {
  Rational sum(1), term(1);
  Rational prev;
  for (int k = 1; k <= terms; ++k) {
    term = term * t / Rational(k);
    prev = sum;
    if (k % 2) sum -= term;
    else sum += term;
  }
  return {pwm::min(prev, sum), pwm::max(prev, sum)};
}

// Loaded once; callers may range over sub-objects of the returned document.
inline const nlohmann::json& frozen() {
  static const nlohmann::json doc = [] {
    std::ifstream in(PWM_FROZEN_JSON);
    if (!in) throw std::runtime_error("cannot open " PWM_FROZEN_JSON);
    std::stringstream ss;
    ss << in.rdbuf();
    return nlohmann::json::parse(ss.str());
  }();
  return doc;
}

}  // namespace ref
