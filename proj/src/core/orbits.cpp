#include "pwmarkov/orbits.hpp"

#include <algorithm>
#include <unordered_set>

#include "pwmarkov/errors.hpp"

namespace pwm {

OrbitState initial_state(const System& system, const Rational& x) {
  if (x.is_integer()) throw IntegerHit(0, x.str());
  const BigInt fl = x.floor();
  OrbitState s;
  s.i = fl + 1;
  s.r = x.num() - x.den() * fl;
  s.dir = branch_of(system, s.i).direction();
  return s;
}

TagStep tag_step(const System& system, const OrbitState& state, const BigInt& q, std::size_t step) {
  const BranchSpec b = branch_of(system, state.i);
  TagStep out;
  out.base = b.count();
  const BigInt mr = out.base * state.r;
  mpz_fdiv_q(out.tag.get_mpz_t(), mr.get_mpz_t(), q.get_mpz_t());
  out.next.r = mr - q * out.tag;
  const bool forward = state.dir == Direction::forward;
  if (out.next.r == 0) {
    const BigInt value = forward ? BigInt(b.image_lo + out.tag) : BigInt(b.image_hi - out.tag);
    throw IntegerHit(step + 1, to_string(value) + "/1");
  }
  out.next.i = forward ? BigInt(b.first_target() + out.tag) : BigInt(b.last_target() - out.tag);
  out.next.dir = flipped_if(state.dir, branch_of(system, out.next.i).decreasing());
  return out;
}

Rational state_point(const OrbitState& state, const BigInt& q, Direction previous) {
  if (previous == Direction::forward) return Rational(state.i - 1) + Rational(state.r, q);
  return Rational(state.i) - Rational(state.r, q);
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::eventually_periodic: return "EventuallyPeriodic";
    case Outcome::hits_integer: return "HitsInteger";
    case Outcome::undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

std::string state_key(const OrbitState& s) {
  std::string key = s.i.get_str(16);
  key += ':';
  key += s.r.get_str(16);
  key += s.dir == Direction::forward ? "+" : "-";
  return key;
}

// Walks the tag recursion and keeps the per-step bookkeeping of classify.
struct Walker {
  const System& system;
  BigInt q;
  OrbitState state;
  std::size_t k = 0;

  void advance() {
    state = tag_step(system, state, q, k).next;
    ++k;
  }
};

}  // namespace

Classification classify(const System& system, const Rational& x, const ClassifyOptions& options) {
  Classification out;
  const BigInt q = x.den();
  for (const auto& n : options.radii) {
    out.visit_audit.push_back({n, 0, BigInt(4 * n * q), false});
  }
  auto audit = [&](const OrbitState& s) {
    const BigInt abs_i = abs(s.i);
    if (abs_i > out.max_abs_index) out.max_abs_index = abs_i;
    for (auto& v : out.visit_audit) {
      if (s.i <= v.radius && s.i >= 1 - v.radius) {
        if (++v.visits > v.limit) v.exceeded = true;
      }
    }
  };

  OrbitState start;
  try {
    start = initial_state(system, x);
  } catch (const IntegerHit&) {
    out.outcome = Outcome::hits_integer;
    out.integer_step = 0;
    out.integer_value = x;
    out.verified = true;
    return out;
  }

  std::unordered_set<std::string> band;
  std::size_t band_visits = 0;
  std::optional<BigInt> band_limit =
      options.alpha ? std::optional<BigInt>(4 * *options.alpha * q + 1) : std::nullopt;
  std::optional<std::size_t> band_repeat;

  const std::size_t window_start = options.max_steps - options.max_steps / 4;
  BigInt window_first;
  bool nondecreasing = true;

  // Brent: the hare walks the orbit once; the tortoise jumps to the hare at powers of two.
  Walker hare{system, q, start};
  OrbitState tortoise = start;
  std::size_t power = 1;
  std::size_t lambda = 1;
  bool found = false;
  auto observe = [&](const OrbitState& s, std::size_t k, const OrbitState* prev) {
    audit(s);
    if (band_limit && abs(s.i) <= *options.alpha && !band_repeat) {
      ++band_visits;
      if (!band.insert(state_key(s)).second) band_repeat = k;
      if (!band_repeat && band_visits > *band_limit) {
        out.findings.push_back("more than " + to_string(*band_limit) +
                               " in-band visits without a repeated state");
        band_limit.reset();
      }
    }
    if (k == window_start) window_first = s.i;
    if (k > window_start && prev && s.i < prev->i) nondecreasing = false;
  };
  observe(start, 0, nullptr);
  try {
    while (hare.k < options.max_steps) {
      const OrbitState prev = hare.state;
      hare.advance();
      observe(hare.state, hare.k, &prev);
      if (hare.state == tortoise) {
        found = true;
        break;
      }
      if (power == lambda) {
        tortoise = hare.state;
        power *= 2;
        lambda = 0;
      }
      ++lambda;
    }
  } catch (const IntegerHit& hit) {
    out.outcome = Outcome::hits_integer;
    out.integer_step = hit.step();
    out.integer_value = Rational::parse(hit.value());
    out.steps_run = hit.step();
    const Orbit orbit = iterate(system, x, hit.step());
    out.verified = orbit.integer_hit_step == hit.step() && orbit.integer_hit_value == out.integer_value;
    if (!out.verified) out.findings.push_back("direct iteration disagrees with the integer hit");
    return out;
  }
  out.steps_run = hare.k;

  if (!found) {
    out.outcome = Outcome::undetermined;
    out.monotone_escape =
        out.steps_run >= options.max_steps && options.max_steps >= 4 && nondecreasing &&
        hare.state.i - window_first >= 2;
    return out;
  }

  // Preperiod: restart with a lead of lambda steps.
  Walker lead{system, q, start};
  for (std::size_t j = 0; j < lambda; ++j) lead.advance();
  Walker lag{system, q, start};
  while (!(lag.state == lead.state)) {
    lag.advance();
    lead.advance();
  }
  out.outcome = Outcome::eventually_periodic;
  out.preperiod = lag.k;
  out.state_period = lambda;

  // The orbit point can close up after half the state cycle when the cycle
  // crosses an odd number of decreasing branches.
  const Orbit orbit = iterate(system, x, out.preperiod + lambda);
  const auto& pts = orbit.points;
  out.period = lambda;
  if (lambda % 2 == 0 && pts.size() > out.preperiod + lambda / 2 &&
      pts[out.preperiod + lambda / 2] == pts[out.preperiod]) {
    out.period = lambda / 2;
  }
  out.verified = pts.size() == out.preperiod + lambda + 1 &&
                 pts[out.preperiod + out.period] == pts[out.preperiod] &&
                 (out.preperiod == 0 || pts[out.preperiod - 1 + out.period] != pts[out.preperiod - 1]);
  if (!out.verified) out.findings.push_back("exact orbit check failed for the detected cycle");
  return out;
}

TagSeries tag_series(const System& system, const Rational& x, std::size_t n) {
  TagSeries out;
  out.a0 = x.floor();
  OrbitState s = initial_state(system, x);
  for (std::size_t k = 0; k < n; ++k) {
    TagStep st = tag_step(system, s, x.den(), k);
    out.digits.push_back(std::move(st.tag));
    out.bases.push_back(std::move(st.base));
    s = std::move(st.next);
  }
  return out;
}

Rational cantor_partial_sum(const TagSeries& series, std::size_t n) {
  if (n > series.digits.size() || n > series.bases.size()) {
    throw SpecError("series has only " + std::to_string(series.digits.size()) + " digits");
  }
  Rational sum(series.a0);
  BigInt m(1);
  for (std::size_t k = 0; k < n; ++k) {
    const BigInt& a = series.digits[k];
    const BigInt& base = series.bases[k];
    if (base < 1 || a < 0 || a >= base) {
      throw SpecError("digit a_" + std::to_string(k + 1) + " = " + to_string(a) +
                      " is outside [0, " + to_string(base) + ")");
    }
    m *= base;
    sum += Rational(a, m);
  }
  return sum;
}

std::vector<Rational> position_sequence(const System& system, const Rational& x, std::size_t n) {
  std::vector<Rational> out;
  if (n == 0) return out;
  const SymbolWord word = itinerary(system, x, n - 1);
  CylinderBuilder builder(system, word.front());
  for (std::size_t k = 0;; ++k) {
    const auto& c = builder.cylinder();
    out.push_back((x - c.left) * Rational(c.width_denominator));
    if (k + 1 == n) break;
    builder.extend(word[k + 1]);
  }
  return out;
}

Rational bottleneck(const System& system, const BigInt& big_n) {
  if (big_n < 1) throw DomainError("bottleneck needs N >= 1");
  Rational best(0);
  BigInt n = 1 - big_n;
  if (const auto first = system.first_index(); first && n < *first) n = *first;
  while (n <= big_n) {
    if (!system.in_domain(n)) {
      ++n;
      continue;
    }
    const BranchSpec b = system.branch(n);
    const BigInt above = b.image_hi - std::max(b.image_lo, big_n);
    const BigInt below = std::min(b.image_hi, BigInt(-big_n)) - b.image_lo;
    BigInt overhang = 0;
    if (above > 0) overhang += above;
    if (below > 0) overhang += below;
    const Rational length(overhang, b.count());
    if (best < length) best = length;
    n = system.run_end(n, big_n) + 1;
  }
  return best;
}

Rational ergod_bound(const BigInt& big_n, const BigInt& q) {
  if (big_n < 1 || q < 1) throw DomainError("ergod bound needs N >= 1 and q >= 1");
  return Rational(big_n, 8 * q) - Rational(BigInt(3), BigInt(2)) + Rational(4 * q, big_n);
}

ErgodAudit ergod_audit(const System& system, const Rational& x, const BigInt& big_n) {
  ErgodAudit out;
  out.big_n = big_n;
  out.q = x.den();
  out.bound = ergod_bound(big_n, out.q);
  if (!big_n.fits_ulong_p()) throw DomainError("N is too large for an exact orbit sum");
  const std::size_t steps = big_n.get_ui();
  const Orbit orbit = iterate(system, x, steps);
  if (orbit.integer_hit_step) throw IntegerHit(*orbit.integer_hit_step, orbit.integer_hit_value->str());
  Rational sum(0);
  for (const auto& p : orbit.points) sum += p.abs();
  out.average = sum / Rational(big_n);
  out.outcome = classify(system, x, {steps, std::nullopt, {}}).outcome;
  out.applicable = out.outcome == Outcome::undetermined;
  out.holds = out.average >= out.bound;
  return out;
}

std::vector<RadiusVisits> pigeonhole_audit(const System& system, const Rational& x,
                                           std::size_t horizon, const std::vector<BigInt>& radii) {
  Classification c = classify(system, x, {horizon, std::nullopt, radii});
  if (c.outcome == Outcome::eventually_periodic) {
    throw PreconditionError("orbit is eventually periodic (preperiod " + std::to_string(c.preperiod) +
                            ", period " + std::to_string(c.period) + "); the visit bound does not apply");
  }
  if (c.outcome == Outcome::hits_integer) {
    throw PreconditionError("orbit reaches an integer at step " + std::to_string(c.integer_step));
  }
  return c.visit_audit;
}

}  // namespace pwm
