#include "pwmarkov/shadowing.hpp"

#include "pwmarkov/errors.hpp"
#include "pwmarkov/random.hpp"

namespace pwm {

namespace {

const SchweitzerT& competition_map() {
  static const SchweitzerT t;
  return t;
}

void require_t(const System& system) {
  if (dynamic_cast<const SchweitzerT*>(&system) == nullptr) {
    throw Unsupported("shadowing is only established for T, not " + system.name());
  }
}

Rational dist(const Rational& y, const Rational& lo, const Rational& hi) {
  if (y < lo) return lo - y;
  if (y > hi) return y - hi;
  return Rational(0);
}

// Smallest point of T^{-1}(y): on the first odd branch whose image [0, 4^l+1] reaches y.
Rational smallest_preimage(const Rational& y) {
  if (y <= Rational(5)) return y / Rational(5);
  std::uint64_t l = 1;
  while (Rational(pow4(l) + 1) < y) ++l;
  const BigInt n = pow4(l - 1) + 1;
  return competition_map().branch(n).preimage(y);
}

struct Plan {
  std::vector<Rational> targets;
  std::vector<Rational> itinerary_points;
  std::optional<Rational> z0;
  Rational bound;
};

Plan plan_for(const PseudoOrbit& pseudo, ShadowMode mode) {
  const auto& t = competition_map();
  Plan plan;
  const auto& x = pseudo.points;
  switch (mode) {
    case ShadowMode::shifted:
      for (const auto& p : x) plan.targets.push_back(eval(t, p));
      plan.itinerary_points = plan.targets;
      plan.bound = Rational(20) * pseudo.delta;
      break;
    case ShadowMode::direct:
      plan.targets = x;
      plan.itinerary_points = x;
      plan.bound = pseudo.delta / Rational(4);
      break;
    case ShadowMode::prepended:
      // z = (z_0, x_0, ..., x_N) with T(z_0) = x_0; the shadow follows j(T(z_0), ..., T(z_N)).
      plan.targets = x;
      plan.z0 = smallest_preimage(x.front());
      plan.itinerary_points.push_back(x.front());
      for (std::size_t k = 0; k + 1 < x.size(); ++k) plan.itinerary_points.push_back(eval(t, x[k]));
      plan.bound = Rational(21) * pseudo.delta;
      break;
  }
  return plan;
}

void check_points(const PseudoOrbit& pseudo) {
  if (pseudo.points.empty()) throw SpecError("pseudo-orbit has no points");
  if (pseudo.delta.sign() < 0) throw SpecError("delta must be nonnegative");
  for (const auto& p : pseudo.points) {
    if (p.sign() < 0) throw DomainError("T is defined on [0, inf), got " + p.str());
  }
}

}  // namespace

SymbolWord j_itinerary(const std::vector<Rational>& points) {
  SymbolWord word;
  word.reserve(points.size());
  for (const auto& p : points) {
    if (p.sign() < 0) throw DomainError("j is defined for points >= 0, got " + p.str());
    const BigInt c = p.ceil();
    word.push_back(c < 1 ? BigInt(1) : c);
  }
  return word;
}

PseudoOrbit gen_pseudo_orbit(const Rational& x0, const Rational& delta, std::size_t steps,
                             std::uint64_t seed) {
  if (x0.sign() < 0) throw DomainError("T is defined on [0, inf), got " + x0.str());
  if (delta.sign() < 0) throw DomainError("delta must be nonnegative");
  const BigInt scale(1000000);
  // |u| / 10^6 < delta strictly.
  BigInt reach = (delta * Rational(scale)).ceil() - 1;
  if (reach < 0) reach = 0;
  StreamRng rng(seed, 0);
  PseudoOrbit out;
  out.delta = delta;
  out.points.push_back(x0);
  for (std::size_t k = 0; k < steps; ++k) {
    Rational next = eval(competition_map(), out.points.back());
    if (reach > 0) {
      const BigInt u = uniform_below(rng, BigInt(2 * reach + 1)) - reach;
      next += Rational(u, scale);
      if (next.sign() < 0) next = Rational(0);
    }
    out.points.push_back(std::move(next));
  }
  return out;
}

bool is_pseudo_orbit(const std::vector<Rational>& points, const Rational& delta) {
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    if (points[k].sign() < 0 || points[k + 1].sign() < 0) return false;
    if ((points[k + 1] - eval(competition_map(), points[k])).abs() >= delta) return false;
  }
  return true;
}

bool omega_prime_check(const SymbolWord& word) {
  for (std::size_t k = 0; k + 1 < word.size(); ++k) {
    if (word[k] < 1) return false;
    const BigInt top = pow4(ell(Rational(word[k]))) + 1;
    if (word[k + 1] < 1 || word[k + 1] > top) return false;
  }
  return word.empty() || word.back() >= 1;
}

std::string_view to_string(ShadowMode m) {
  switch (m) {
    case ShadowMode::shifted: return "shifted";
    case ShadowMode::direct: return "direct";
    case ShadowMode::prepended: return "prepended";
  }
  return "?";
}

ShadowMode parse_shadow_mode(std::string_view text) {
  if (text == "shifted") return ShadowMode::shifted;
  if (text == "direct") return ShadowMode::direct;
  if (text == "prepended") return ShadowMode::prepended;
  throw SpecError("unknown shadow mode '" + std::string(text) + "' (shifted, direct or prepended)");
}

ShadowCertificate build_shadow(const System& system, const PseudoOrbit& pseudo, ShadowMode mode) {
  require_t(system);
  check_points(pseudo);
  if (pseudo.delta >= Rational(BigInt(1), BigInt(4))) {
    throw PreconditionError("shadowing needs delta < 1/4, got " + pseudo.delta.str());
  }
  Plan plan = plan_for(pseudo, mode);
  ShadowCertificate cert;
  cert.mode = mode;
  cert.delta = pseudo.delta;
  cert.z0 = plan.z0;
  cert.targets = std::move(plan.targets);
  cert.theorem_bound = plan.bound;
  cert.word = j_itinerary(plan.itinerary_points);
  cert.admissible = omega_prime_check(cert.word);
  if (!cert.admissible) {
    cert.findings.push_back(mode == ShadowMode::direct
                                ? "itinerary of the points is not realizable under T; the delta/4 "
                                  "statement does not apply"
                                : "itinerary of the shifted points is not realizable under T "
                                  "although delta < 1/4");
    return cert;
  }
  // Suffix cylinders I_{j_k...j_N}, built backward by pulling each one through branch j_k.
  const std::size_t n = cert.word.size();
  std::vector<Rational> lo(n), hi(n);
  lo[n - 1] = Rational(cert.word[n - 1] - 1);
  hi[n - 1] = Rational(cert.word[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    const BranchSpec b = competition_map().branch(cert.word[k]);
    const Rational a = b.preimage(lo[k + 1]);
    const Rational c = b.preimage(hi[k + 1]);
    lo[k] = min(a, c);
    hi[k] = max(a, c);
  }
  cert.shadow = cylinder(competition_map(), cert.word);
  cert.max_deviation = Rational(0);
  for (std::size_t k = 0; k < n; ++k) {
    cert.deviations.push_back(dist(cert.targets[k], lo[k], hi[k]));
    cert.tail_widths.push_back(hi[k] - lo[k]);
    if (cert.max_deviation < cert.deviations.back()) cert.max_deviation = cert.deviations.back();
  }
  if (cert.shadow.left != lo[0] || cert.shadow.right != hi[0]) {
    cert.findings.push_back("forward and backward cylinder constructions disagree");
  }
  return cert;
}

ShadowReport verify_shadowing(const System& system, const PseudoOrbit& pseudo,
                              const ShadowCertificate& certificate, const Rational& epsilon) {
  require_t(system);
  check_points(pseudo);
  ShadowReport report;
  report.epsilon = epsilon;
  const Plan plan = plan_for(pseudo, certificate.mode);
  if (certificate.delta != pseudo.delta || certificate.targets != plan.targets ||
      certificate.word != j_itinerary(plan.itinerary_points)) {
    throw SpecError("certificate was not built from this pseudo-orbit");
  }
  if (!certificate.admissible || !omega_prime_check(certificate.word)) {
    report.findings.push_back("itinerary is not admissible");
    report.first_violation = 0;
    return report;
  }
  if (certificate.deviations.size() != certificate.word.size()) {
    throw SpecError("certificate has " + std::to_string(certificate.deviations.size()) +
                    " deviations for " + std::to_string(certificate.word.size()) + " targets");
  }
  report.max_deviation = Rational(0);
  for (std::size_t k = 0; k < certificate.word.size(); ++k) {
    const SymbolWord suffix(certificate.word.begin() + static_cast<std::ptrdiff_t>(k),
                            certificate.word.end());
    const CylinderInterval c = cylinder(competition_map(), suffix);
    const Rational d = dist(certificate.targets[k], c.left, c.right);
    if (d != certificate.deviations[k]) {
      report.findings.push_back("deviation at step " + std::to_string(k) + " does not match: " +
                                d.str() + " vs " + certificate.deviations[k].str());
      if (!report.first_violation) report.first_violation = k;
    }
    if (report.max_deviation < d) report.max_deviation = d;
    if (d > epsilon && !report.first_violation) report.first_violation = k;
  }
  report.pass = !report.first_violation;
  return report;
}

}  // namespace pwm
