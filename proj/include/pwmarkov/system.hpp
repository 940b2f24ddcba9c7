#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwmarkov/rational.hpp"

namespace pwm {

enum class Direction { forward, backward };

inline Direction flipped_if(Direction d, bool flip) {
  if (!flip) return d;
  return d == Direction::forward ? Direction::backward : Direction::forward;
}
std::string_view to_string(Direction d);

/// Smallest positive integer n with x <= 4^n. Throws DomainError for x < 0.
std::uint64_t ell(const Rational& x);
BigInt pow4(std::uint64_t k);

/// Affine data of a system on J_n = [n-1, n].
///
/// The image f(J_n) = [image_lo, image_hi] has integer endpoints and covers
/// the |slope| integer intervals J_{image_lo+1} .. J_{image_hi}.
struct BranchSpec {
  BigInt index;
  BigInt slope;
  BigInt value_at_left;
  BigInt image_lo;
  BigInt image_hi;

  static BranchSpec affine(BigInt index, BigInt slope, BigInt value_at_left);

  BigInt count() const { return abs(slope); }
  bool decreasing() const { return slope < 0; }
  Direction direction() const { return decreasing() ? Direction::backward : Direction::forward; }
  BigInt first_target() const { return image_lo + 1; }
  const BigInt& last_target() const { return image_hi; }
  bool targets(const BigInt& k) const { return k > image_lo && k <= image_hi; }
  BigInt value_at_right() const { return value_at_left + slope; }

  /// f(x) for x in J_n (endpoints taken along the affine rule).
  Rational apply(const Rational& x) const;
  /// The unique point of J_n mapped to y; y must lie in the image.
  Rational preimage(const Rational& y) const;
};

/// A countable piecewise-linear Markov map on integer intervals.
///
/// Implementations are immutable after construction and may be shared
/// across threads; any memoized tables are guarded internally.
class System {
 public:
  virtual ~System() = default;

  virtual std::string name() const = 0;
  /// Lowest branch index, or nullopt when the domain is unbounded below.
  virtual std::optional<BigInt> first_index() const = 0;
  virtual bool in_domain(const BigInt& n) const;
  /// Throws DomainError outside the domain, SpecError for an undefined table entry.
  virtual BranchSpec branch(const BigInt& n) const = 0;

  /// Last index m in [n, cap] such that every branch n..m has the same image
  /// and the same |slope| as branch n. Lets window scans skip repeated shapes.
  virtual BigInt run_end(const BigInt& n, const BigInt& cap) const;
  /// True when every index in [lo, hi] names a branch of the system.
  virtual bool covers(const BigInt& lo, const BigInt& hi) const;

  /// Only the competition map T is defined (and continuous) at integers.
  virtual bool defined_at_integers() const { return false; }
  virtual Rational value_at_integer(const BigInt& k) const;
};

using SystemPtr = std::shared_ptr<const System>;

/// The competition map T on [0, inf): T(even) = 0, T(odd k) = 4^{ell(k)} + 1,
/// linear in between.
class SchweitzerT final : public System {
 public:
  std::string name() const override { return "T"; }
  std::optional<BigInt> first_index() const override { return BigInt(1); }
  BranchSpec branch(const BigInt& n) const override;
  BigInt run_end(const BigInt& n, const BigInt& cap) const override;
  bool defined_at_integers() const override { return true; }
  Rational value_at_integer(const BigInt& k) const override;
};

/// f(x) = 4(x - floor x) on [0,3), 4x - 3 floor(x) - 2 on [3, inf).
class Kek final : public System {
 public:
  std::string name() const override { return "Kek"; }
  std::optional<BigInt> first_index() const override { return BigInt(1); }
  BranchSpec branch(const BigInt& n) const override;
  BigInt run_end(const BigInt& n, const BigInt& cap) const override;
};

/// f|J_n(x) = h_n (x - (n-1)) with h_n = 3 except h_{floor(S_k/2)+1} = S_{k+1},
/// S_0 = 1, S_1 = 3, S_{k+1} = 4 S_k + 1.
class PosrecEscapes final : public System {
 public:
  std::string name() const override { return "PosrecEscapes"; }
  std::optional<BigInt> first_index() const override { return BigInt(1); }
  BranchSpec branch(const BigInt& n) const override;
  BigInt run_end(const BigInt& n, const BigInt& cap) const override;

  BigInt s(std::size_t k) const;
  BigInt slope_at(const BigInt& n) const;

 private:
  // Ensures the table holds S_0..S_k with floor(S_k/2)+1 > n.
  void extend_past(const BigInt& n) const;

  mutable std::mutex mutex_;
  mutable std::vector<BigInt> s_ = {BigInt(1), BigInt(3)};
};

struct ZoldParams {
  /// Explicit n_1, n_2, ...; the tail continues with n_k = k.
  std::vector<BigInt> prefix;
  /// Use the unanchored rule (n_k+1) x + s_k instead of (n_k+1)(x-(n-1)) + s_k.
  bool literal = false;
};

/// Block system: for s_k < n <= s_{k+1}, s_k = n_1 + ... + n_{k-1},
/// f|J_n(x) = (n_k+1)(x-(n-1)) + s_k, so J_n maps onto [s_k, s_{k+1}+1].
class Zold final : public System {
 public:
  explicit Zold(ZoldParams params);

  std::string name() const override { return "Zold"; }
  std::optional<BigInt> first_index() const override { return BigInt(1); }
  BranchSpec branch(const BigInt& n) const override;
  BigInt run_end(const BigInt& n, const BigInt& cap) const override;

  const ZoldParams& params() const { return params_; }
  BigInt block_size(const BigInt& k) const;  // n_k
  BigInt block_start(const BigInt& k) const;  // s_k
  /// The k with s_k < n <= s_{k+1}.
  BigInt block_of(const BigInt& n) const;

 private:
  ZoldParams params_;
  std::vector<BigInt> prefix_sums_;  // s_1 .. s_{K+1} for K = prefix size
};

/// Transient example built from p(n) = exp(-1/n^2):
/// P(n) = ceil(p/(1-p)), S_0 = 0, S_1 = 1, S_n = (n-1) P(n) S_{n-1},
/// h_1 = 2, h_n = n P(n) S_{n-1}; f|J_j(x) = h_n (x - (j-1)) for J_j in [S_{n-1}, S_n].
class Extransi final : public System {
 public:
  std::string name() const override { return "Extransi"; }
  std::optional<BigInt> first_index() const override { return BigInt(1); }
  BranchSpec branch(const BigInt& j) const override;
  BigInt run_end(const BigInt& j, const BigInt& cap) const override;

  BigInt ratio_ceiling(std::size_t n) const;  // P(n)
  BigInt s(std::size_t n) const;              // S_n
  BigInt h(std::size_t n) const;              // h_n
  /// Block n with S_{n-1} < j <= S_n; j >= 1.
  std::size_t block_of(const BigInt& j) const;

 private:
  void extend_to(std::size_t n) const;
  void extend_past(const BigInt& j) const;

  mutable std::mutex mutex_;
  // Index 0 unused for P and h.
  mutable std::vector<BigInt> p_ = {BigInt(0)};
  mutable std::vector<BigInt> s_ = {BigInt(0)};
  mutable std::vector<BigInt> h_ = {BigInt(0)};
};

/// A finite table of branches with an optional tail rule beyond the last entry.
class CustomSystem final : public System {
 public:
  struct Entry {
    BigInt n;
    BigInt slope;
    BigInt f_left;
  };
  enum class TailKind { none, repeat_last_branch_shape, constant_slope };
  struct Tail {
    TailKind kind = TailKind::none;
    BigInt k;  // constant_slope only
  };

  CustomSystem(std::string name, std::vector<Entry> entries, Tail tail);

  std::string name() const override { return name_; }
  std::optional<BigInt> first_index() const override { return first_; }
  bool in_domain(const BigInt& n) const override;
  BranchSpec branch(const BigInt& n) const override;
  BigInt run_end(const BigInt& n, const BigInt& cap) const override;
  bool covers(const BigInt& lo, const BigInt& hi) const override;

  const Tail& tail() const { return tail_; }

 private:
  const Entry* find(const BigInt& n) const;

  std::string name_;
  std::vector<Entry> entries_;  // sorted by n
  Tail tail_;
  BigInt first_;
  BigInt last_;
};

/// Parses the custom-system JSON document:
///   {"name": ..., "branches": [{"n", "slope", "f_left"}...], "tail": {"kind": ...}}
/// Integers may be JSON numbers or decimal strings.
SystemPtr load_custom_system(std::string_view json_text);

/// Builtins by name: "T" (alias "SchweitzerT"), "Kek", "PosrecEscapes", "Zold", "Extransi".
SystemPtr make_builtin(std::string_view name, const ZoldParams& zold = {});

BranchSpec branch_of(const System& system, const BigInt& n);

/// Exact f(x). Integer x is only accepted by systems defined at integers;
/// everywhere else it raises IntegerHit.
Rational eval(const System& system, const Rational& x);

struct Orbit {
  /// x, f(x), ..., up to (not including) an integer hit.
  std::vector<Rational> points;
  std::optional<std::size_t> integer_hit_step;
  std::optional<Rational> integer_hit_value;
};

/// (x, f(x), ..., f^steps(x)); stops at the first integer orbit point.
Orbit iterate(const System& system, const Rational& x, std::size_t steps);

struct ValidationFinding {
  BigInt index;
  std::string check;
  std::string message;
};

struct ValidationReport {
  BigInt from;
  BigInt to;
  std::size_t branches_checked = 0;
  std::optional<ValidationFinding> violation;
  bool ok() const { return !violation.has_value(); }
};

/// Checks branch and Markov-partition invariants for indices in [from, to]
/// and stops at the first violation.
ValidationReport validate(const System& system, const BigInt& from, const BigInt& to);

}  // namespace pwm
