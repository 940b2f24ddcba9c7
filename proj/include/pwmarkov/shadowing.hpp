#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwmarkov/symbolic.hpp"

namespace pwm {

struct PseudoOrbit {
  std::vector<Rational> points;
  Rational delta;
};

/// j_k = max(1, ceil(x_k)): the smallest index with x_k in [j_k - 1, j_k].
SymbolWord j_itinerary(const std::vector<Rational>& points);

/// x_{k+1} = T(x_k) + u/10^6 with |u| <= ceil(delta 10^6) - 1, clamped at 0.
PseudoOrbit gen_pseudo_orbit(const Rational& x0, const Rational& delta, std::size_t steps,
                             std::uint64_t seed);

/// |x_{k+1} - T(x_k)| < delta at every step.
bool is_pseudo_orbit(const std::vector<Rational>& points, const Rational& delta);

/// i_{k+1} in [1, 4^{ell(i_k)} + 1] for every consecutive pair.
bool omega_prime_check(const SymbolWord& word);

enum class ShadowMode {
  shifted,    // targets T(x_k), bound 20 delta
  direct,     // targets x_k, needs j(x) in the admissible set, bound delta/4
  prepended,  // z_0 in T^{-1}(x_0) put in front, targets x_k, bound 21 delta
};
std::string_view to_string(ShadowMode m);
ShadowMode parse_shadow_mode(std::string_view text);

struct ShadowCertificate {
  ShadowMode mode = ShadowMode::shifted;
  Rational delta;
  std::optional<Rational> z0;
  std::vector<Rational> targets;   // the sequence being shadowed
  SymbolWord word;                 // j-itinerary the shadow follows
  bool admissible = false;
  std::vector<std::string> findings;
  CylinderInterval shadow;         // I_{j_0...j_N}; any interior point works
  std::vector<Rational> deviations;  // dist(target_k, I_{j_k...j_N})
  std::vector<Rational> tail_widths;  // |I_{j_k...j_N}|
  Rational max_deviation;
  Rational theorem_bound;
};

/// T only; PreconditionError for delta >= 1/4, Unsupported for other systems.
ShadowCertificate build_shadow(const System& system, const PseudoOrbit& pseudo,
                               ShadowMode mode = ShadowMode::shifted);

struct ShadowReport {
  bool pass = false;
  Rational epsilon;
  Rational max_deviation;
  std::optional<std::size_t> first_violation;
  std::vector<std::string> findings;
};

/// Recomputes every suffix cylinder independently and checks deviation <= epsilon.
ShadowReport verify_shadowing(const System& system, const PseudoOrbit& pseudo,
                              const ShadowCertificate& certificate, const Rational& epsilon);

}  // namespace pwm
