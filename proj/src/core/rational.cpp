#include "pwmarkov/rational.hpp"

#include <algorithm>
#include <cctype>

#include "pwmarkov/errors.hpp"

namespace pwm {

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(start), text.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  if (!is_integer_literal(text)) {
    throw SpecError("not an integer literal: '" + std::string(text) + "'");
  }
  if (text[0] == '+') text.remove_prefix(1);
  return BigInt(std::string(text), 10);
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::size_t bit_length(const BigInt& value) {
  if (value == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  const auto num_text = text.substr(0, slash);
  const auto den_text = text.substr(slash + 1);
  if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+') {
    throw SpecError("bad rational literal '" + std::string(text) + "' (expected p/q with q > 0)");
  }
  const BigInt den = parse_bigint(den_text);
  if (den == 0) throw SpecError("rational literal with zero denominator: '" + std::string(text) + "'");
  return Rational(parse_bigint(num_text), den);
}

BigInt Rational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

BigInt Rational::ceil() const {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

std::string Rational::str() const {
  return value_.get_num().get_str(10) + "/" + value_.get_den().get_str(10);
}

std::string Rational::decimal(int digits) const {
  const auto precision = static_cast<mp_bitcnt_t>(digits * 4 + 64);
  mpf_class f(value_, precision);
  if (f == 0) return "0";
  mp_exp_t exponent = 0;
  std::string mantissa = f.get_str(exponent, 10, static_cast<std::size_t>(digits));
  std::string sign;
  if (!mantissa.empty() && mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // mantissa is 0.DIGITS * 10^exponent
  const long exp10 = static_cast<long>(exponent);
  if (exp10 > 0 && exp10 <= 21) {
    if (static_cast<long>(mantissa.size()) <= exp10) {
      return sign + mantissa + std::string(static_cast<std::size_t>(exp10) - mantissa.size(), '0');
    }
    return sign + mantissa.substr(0, static_cast<std::size_t>(exp10)) + "." +
           mantissa.substr(static_cast<std::size_t>(exp10));
  }
  if (exp10 <= 0 && exp10 > -7) {
    return sign + "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mantissa;
  }
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  return out + "e" + std::to_string(exp10 - 1);
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.value_ == 0) throw DomainError("division by zero");
  value_ /= other.value_;
  return *this;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace pwm
