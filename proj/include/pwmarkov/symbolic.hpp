#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pwmarkov/system.hpp"

namespace pwm {

/// Branch indices i_0 ... i_n.
using SymbolWord = std::vector<BigInt>;

std::string to_string(const SymbolWord& word);  // "1,3,3"
SymbolWord parse_word(std::string_view text);

/// The set J_{i_0...i_n} of points whose first n+1 orbit steps visit the word.
struct CylinderInterval {
  Rational left;
  Rational right;
  std::size_t depth = 0;           // n
  Direction direction = Direction::forward;
  std::vector<BigInt> tags;        // a_1 .. a_n
  BigInt width_denominator{1};     // M_n, right - left = 1/M_n
};

/// Extends a cylinder one symbol at a time in O(1) per step.
class CylinderBuilder {
 public:
  CylinderBuilder(const System& system, const BigInt& first);

  /// Appends `next`; throws AdmissibilityError if J_next is not in the image
  /// of the current last branch.
  void extend(const BigInt& next);

  const CylinderInterval& cylinder() const { return cyl_; }
  const BranchSpec& last_branch() const { return last_; }

 private:
  const System* system_;
  BranchSpec last_;
  CylinderInterval cyl_;
};

/// (i_0, ..., i_depth). IntegerHit carries the step of the integer point.
SymbolWord itinerary(const System& system, const Rational& x, std::size_t depth);

CylinderInterval cylinder(const System& system, const SymbolWord& word);

bool admissible(const System& system, const SymbolWord& word);
/// Realizability under T; infinite-tail exclusions cannot be seen on a finite prefix.
bool omega_t_check(const SymbolWord& word);

struct Regressors {
  std::vector<Rational> lower;        // L_0 .. L_depth
  std::vector<Rational> upper;        // U_0 .. U_depth
  std::vector<Rational> differences;  // d_1 .. d_depth
};

Regressors regressors(const System& system, const Rational& x, std::size_t depth);

/// Product of 1/|slope| over all symbols but the last.
Rational expansivity_width(const System& system, const SymbolWord& word);

}  // namespace pwm
