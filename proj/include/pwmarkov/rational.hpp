#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pwm {

using BigInt = mpz_class;

/// Parses a decimal integer literal with optional sign; throws SpecError.
BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& value);
/// Number of significant bits of |value|; 0 for zero.
std::size_t bit_length(const BigInt& value);

/// Exact signed fraction, always in lowest terms with a positive denominator.
///
/// Text form is "p/q" in both directions: `str()` always writes the slash
/// (integers come out as "n/1"), `parse()` accepts "p/q" or a bare integer
/// and rejects anything decimal so nothing is silently rounded.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  // Unevaluated integer expressions such as `n - 1`.
  template <class Op>
  Rational(const __gmp_expr<mpz_t, Op>& value) : value_(BigInt(value)) {}  // NOLINT
  Rational(const BigInt& numerator, const BigInt& denominator);
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  static Rational parse(std::string_view text);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  BigInt floor() const;
  BigInt ceil() const;
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  Rational abs() const;

  std::string str() const;
  /// Decimal rendering with `digits` significant digits; never used for arithmetic.
  std::string decimal(int digits = 17) const;
  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace pwm
