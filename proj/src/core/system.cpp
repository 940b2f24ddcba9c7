#include "pwmarkov/system.hpp"

#include "pwmarkov/errors.hpp"

namespace pwm {

std::string_view to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

BigInt pow4(std::uint64_t k) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 4, k);
  return out;
}

std::uint64_t ell(const Rational& x) {
  if (x.sign() < 0) throw DomainError("ell is defined for x >= 0, got " + x.str());
  // x <= 4^n  <=>  ceil(x) <= 4^n  <=>  2n >= bit_length(ceil(x) - 1)
  const BigInt c = x.ceil();
  if (c <= 4) return 1;
  const std::uint64_t bits = bit_length(c - 1);
  return (bits + 1) / 2;
}

BranchSpec BranchSpec::affine(BigInt index, BigInt slope, BigInt value_at_left) {
  BranchSpec b;
  b.index = std::move(index);
  b.slope = std::move(slope);
  b.value_at_left = std::move(value_at_left);
  const BigInt right = b.value_at_left + b.slope;
  b.image_lo = b.slope < 0 ? right : b.value_at_left;
  b.image_hi = b.slope < 0 ? b.value_at_left : right;
  return b;
}

Rational BranchSpec::apply(const Rational& x) const {
  return Rational(value_at_left) + Rational(slope) * (x - Rational(index - 1));
}

Rational BranchSpec::preimage(const Rational& y) const {
  return Rational(index - 1) + (y - Rational(value_at_left)) / Rational(slope);
}

bool System::in_domain(const BigInt& n) const {
  const auto first = first_index();
  return !first || n >= *first;
}

BigInt System::run_end(const BigInt& n, const BigInt& /*cap*/) const { return n; }

bool System::covers(const BigInt& lo, const BigInt& hi) const {
  if (hi < lo) return true;
  return in_domain(lo) && in_domain(hi);
}

Rational System::value_at_integer(const BigInt& k) const {
  throw IntegerHit(0, to_string(k));
}

BranchSpec branch_of(const System& system, const BigInt& n) {
  if (!system.in_domain(n)) {
    throw DomainError("branch index " + to_string(n) + " is outside the domain of " + system.name());
  }
  return system.branch(n);
}

Rational eval(const System& system, const Rational& x) {
  if (x.is_integer()) {
    if (system.defined_at_integers()) return system.value_at_integer(x.num());
    throw IntegerHit(0, x.str());
  }
  return branch_of(system, x.floor() + 1).apply(x);
}

Orbit iterate(const System& system, const Rational& x, std::size_t steps) {
  Orbit orbit;
  orbit.points.reserve(steps + 1);
  Rational current = x;
  for (std::size_t k = 0;; ++k) {
    if (current.is_integer()) {
      orbit.integer_hit_step = k;
      orbit.integer_hit_value = current;
      break;
    }
    orbit.points.push_back(current);
    if (k == steps) break;
    current = branch_of(system, current.floor() + 1).apply(current);
  }
  return orbit;
}

namespace {

std::optional<ValidationFinding> check_branch(const System& system, const BigInt& n) {
  auto finding = [&](std::string check, std::string message) {
    return ValidationFinding{n, std::move(check), std::move(message)};
  };
  BranchSpec b;
  try {
    b = system.branch(n);
  } catch (const Error& e) {
    return finding("branch-defined", e.what());
  }
  if (b.index != n) {
    return finding("branch-index", "branch reports index " + to_string(b.index));
  }
  if (b.count() < 2) {
    return finding("slope-magnitude", "|slope| = " + to_string(b.count()) + " < 2");
  }
  if (system.defined_at_integers() && b.count() < 5) {
    return finding("slope-magnitude", "|slope| = " + to_string(b.count()) + " < 5 for T");
  }
  if (b.image_hi - b.image_lo != b.count()) {
    return finding("image-width", "image [" + to_string(b.image_lo) + ", " + to_string(b.image_hi) +
                                      "] does not span |slope| intervals");
  }
  const Rational at_left = b.apply(Rational(n - 1));
  const Rational at_right = b.apply(Rational(n));
  const Rational lo = min(at_left, at_right);
  const Rational hi = max(at_left, at_right);
  if (lo != Rational(b.image_lo) || hi != Rational(b.image_hi)) {
    return finding("endpoint-values", "endpoint values " + at_left.str() + ", " + at_right.str() +
                                          " disagree with the declared image");
  }
  if (system.defined_at_integers()) {
    if (system.value_at_integer(n - 1) != at_left || system.value_at_integer(n) != at_right) {
      return finding("endpoint-values", "branch is not continuous with the integer values");
    }
  }
  if (!system.covers(b.first_target(), b.last_target())) {
    return finding("markov-consistency", "image [" + to_string(b.image_lo) + ", " +
                                             to_string(b.image_hi) +
                                             "] contains an interval that is not a branch domain");
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate(const System& system, const BigInt& from, const BigInt& to) {
  ValidationReport report;
  report.from = from;
  report.to = to;
  BigInt n = from;
  if (const auto first = system.first_index(); first && n < *first) n = *first;
  for (; n <= to; ++n) {
    ++report.branches_checked;
    if (auto f = check_branch(system, n)) {
      report.violation = std::move(f);
      break;
    }
  }
  return report;
}

}  // namespace pwm
