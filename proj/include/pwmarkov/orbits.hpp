#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwmarkov/symbolic.hpp"

namespace pwm {

/// State of the integer tag recursion for x = p/q.
///
/// r/q is the position of x inside its depth-k cylinder, measured from the
/// left end; dir is the direction of f^{k+1} on that cylinder.
struct OrbitState {
  BigInt i;
  BigInt r;
  Direction dir = Direction::forward;

  friend bool operator==(const OrbitState&, const OrbitState&) = default;
};

/// State at step 0; IntegerHit(0) for integer x.
OrbitState initial_state(const System& system, const Rational& x);

struct TagStep {
  BigInt tag;  // a_{k+1}
  BigInt base;  // m_k
  OrbitState next;
};

/// One step of a_{k+1} = floor(m_k r_k / q), r_{k+1} = m_k r_k - q a_{k+1}.
/// `step` is k, used only to report IntegerHit(k+1) when r_{k+1} = 0.
TagStep tag_step(const System& system, const OrbitState& state, const BigInt& q,
                 std::size_t step = 0);

/// Exact point f^k(x) recovered from the state: (i-1) + r/q or i - r/q.
Rational state_point(const OrbitState& state, const BigInt& q, Direction previous);

enum class Outcome { eventually_periodic, hits_integer, undetermined };
std::string_view to_string(Outcome o);

struct RadiusVisits {
  BigInt radius;
  std::size_t visits = 0;
  BigInt limit;  // 4 n q
  bool exceeded = false;
};

struct ClassifyOptions {
  std::size_t max_steps = 1'000'000;
  /// Declared bound on liminf |f^k(x)|; enables the exact in-band state table.
  std::optional<BigInt> alpha;
  std::vector<BigInt> radii = {1, 2, 4, 8, 16, 32, 64};
};

struct Classification {
  Outcome outcome = Outcome::undetermined;
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::size_t state_period = 0;
  std::size_t integer_step = 0;
  std::optional<Rational> integer_value;
  std::size_t steps_run = 0;
  BigInt max_abs_index;
  bool monotone_escape = false;
  bool verified = false;
  std::vector<RadiusVisits> visit_audit;
  std::vector<std::string> findings;
};

Classification classify(const System& system, const Rational& x, const ClassifyOptions& options = {});

struct TagSeries {
  BigInt a0;
  std::vector<BigInt> digits;  // a_1 .. a_n
  std::vector<BigInt> bases;   // m_0 .. m_{n-1}
};

TagSeries tag_series(const System& system, const Rational& x, std::size_t n);

/// a_0 + sum_{k<=n} a_k / M_k; SpecError if some a_k is outside [0, m_{k-1}).
Rational cantor_partial_sum(const TagSeries& series, std::size_t n);

/// (x - L_{k-1}) M_{k-1} for k = 1..n, read off the cylinders of the itinerary.
std::vector<Rational> position_sequence(const System& system, const Rational& x, std::size_t n);

/// max over 1-N <= n <= N of |f^{-1}((-inf,-N] u [N,inf)) n J_n|.
Rational bottleneck(const System& system, const BigInt& big_n);

/// N/(8q) - 3/2 + 4q/N
Rational ergod_bound(const BigInt& big_n, const BigInt& q);

struct ErgodAudit {
  BigInt big_n;
  BigInt q;
  Rational average;  // (1/N) sum_{n=0..N} |f^n(x)|
  Rational bound;
  Outcome outcome = Outcome::undetermined;  // classification over N steps
  bool applicable = false;
  bool holds = false;
};

ErgodAudit ergod_audit(const System& system, const Rational& x, const BigInt& big_n);

/// Visits of f^k(x), k = 0..horizon, to [-n, n]. Refused with PreconditionError
/// when the orbit is eventually periodic or hits an integer within the horizon.
std::vector<RadiusVisits> pigeonhole_audit(const System& system, const Rational& x,
                                           std::size_t horizon, const std::vector<BigInt>& radii);

}  // namespace pwm
