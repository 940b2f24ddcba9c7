#include "pwmarkov/symbolic.hpp"

#include "pwmarkov/errors.hpp"

namespace pwm {

std::string to_string(const SymbolWord& word) {
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += ',';
    out += to_string(word[k]);
  }
  return out;
}

SymbolWord parse_word(std::string_view text) {
  SymbolWord word;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::string_view item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    word.push_back(parse_bigint(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return word;
}

CylinderBuilder::CylinderBuilder(const System& system, const BigInt& first)
    : system_(&system), last_(branch_of(system, first)) {
  cyl_.left = Rational(first - 1);
  cyl_.right = Rational(first);
  cyl_.direction = last_.direction();
}

void CylinderBuilder::extend(const BigInt& next) {
  if (!last_.targets(next)) {
    throw AdmissibilityError(cyl_.depth, "J_" + to_string(next) + " is not in the image of J_" +
                                             to_string(last_.index) + " = [" +
                                             to_string(last_.image_lo) + ", " +
                                             to_string(last_.image_hi) + "]");
  }
  BranchSpec next_branch;
  try {
    next_branch = branch_of(*system_, next);
  } catch (const DomainError& e) {
    throw AdmissibilityError(cyl_.depth, e.what());
  }
  // Children are ordered by tag left to right; the composed map's direction
  // decides whether that is increasing or decreasing target index.
  BigInt tag = cyl_.direction == Direction::forward ? BigInt(next - last_.first_target())
                                                    : BigInt(last_.last_target() - next);
  cyl_.width_denominator *= last_.count();
  cyl_.left += Rational(tag, cyl_.width_denominator);
  cyl_.right = cyl_.left + Rational(BigInt(1), cyl_.width_denominator);
  cyl_.tags.push_back(std::move(tag));
  ++cyl_.depth;
  cyl_.direction = flipped_if(cyl_.direction, next_branch.decreasing());
  last_ = std::move(next_branch);
}

SymbolWord itinerary(const System& system, const Rational& x, std::size_t depth) {
  SymbolWord word;
  word.reserve(depth + 1);
  Rational y = x;
  for (std::size_t k = 0; k <= depth; ++k) {
    if (y.is_integer()) throw IntegerHit(k, y.str());
    const BranchSpec b = branch_of(system, y.floor() + 1);
    word.push_back(b.index);
    if (k < depth) y = b.apply(y);
  }
  return word;
}

CylinderInterval cylinder(const System& system, const SymbolWord& word) {
  if (word.empty()) throw AdmissibilityError(0, "empty symbol word");
  CylinderBuilder builder = [&] {
    try {
      return CylinderBuilder(system, word.front());
    } catch (const DomainError& e) {
      throw AdmissibilityError(0, e.what());
    }
  }();
  for (std::size_t k = 1; k < word.size(); ++k) builder.extend(word[k]);
  return builder.cylinder();
}

bool admissible(const System& system, const SymbolWord& word) {
  try {
    (void)cylinder(system, word);
    return true;
  } catch (const AdmissibilityError&) {
    return false;
  } catch (const SpecError&) {
    return false;
  }
}

bool omega_t_check(const SymbolWord& word) {
  static const SchweitzerT t;
  return admissible(t, word);
}

Regressors regressors(const System& system, const Rational& x, std::size_t depth) {
  const SymbolWord word = itinerary(system, x, depth);
  Regressors out;
  CylinderBuilder builder(system, word.front());
  out.lower.push_back(builder.cylinder().left);
  out.upper.push_back(builder.cylinder().right);
  for (std::size_t k = 1; k < word.size(); ++k) {
    builder.extend(word[k]);
    out.lower.push_back(builder.cylinder().left);
    out.upper.push_back(builder.cylinder().right);
    out.differences.push_back(out.lower[k] - out.lower[k - 1]);
  }
  return out;
}

Rational expansivity_width(const System& system, const SymbolWord& word) {
  const CylinderInterval c = cylinder(system, word);
  return Rational(BigInt(1), c.width_denominator);
}

}  // namespace pwm
