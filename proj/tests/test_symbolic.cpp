#include <algorithm>

#include <doctest.h>

#include "oracles/reference.hpp"
#include "pwmarkov/errors.hpp"
#include "pwmarkov/symbolic.hpp"

using namespace pwm;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST_CASE("itinerary") {
  const SchweitzerT t;
  const Kek kek;
  CHECK(itinerary(t, q("1/2"), 3) == SymbolWord{1, 3, 3, 3});
  CHECK(itinerary(kek, q("14/15"), 4) == SymbolWord{1, 4, 4, 5, 5});
  try {
    (void)itinerary(t, q("1/5"), 2);
    FAIL("expected an integer hit");
  } catch (const IntegerHit& e) {
    CHECK(e.step() == 1);
  }
}

TEST_CASE("cylinder examples") {
  const SchweitzerT t;
  const Kek kek;
  const auto c11 = cylinder(t, {1, 1});
  CHECK(c11.left == Rational(0));
  CHECK(c11.right == q("1/5"));
  CHECK(c11.direction == Direction::forward);
  CHECK(c11.tags == std::vector<BigInt>{0});

  const auto c42 = cylinder(t, {4, 2});
  CHECK(c42.left == q("18/5"));
  CHECK(c42.right == q("19/5"));
  CHECK(c42.tags == std::vector<BigInt>{3});
  // branches 4 and 2 both decrease
  CHECK(c42.direction == Direction::forward);
  CHECK(cylinder(t, {4}).direction == Direction::backward);
  CHECK(cylinder(t, {4, 3}).direction == Direction::backward);

  const auto k14 = cylinder(kek, {1, 4});
  CHECK(k14.left == q("3/4"));
  CHECK(k14.right == Rational(1));
  CHECK(k14.tags == std::vector<BigInt>{3});

  CHECK_THROWS_AS(cylinder(t, {1, 6}), AdmissibilityError);
  CHECK_THROWS_AS(cylinder(t, {}), AdmissibilityError);
  CHECK_THROWS_AS(cylinder(t, {0, 1}), AdmissibilityError);
}

TEST_CASE("admissibility") {
  const SchweitzerT t;
  const Kek kek;
  CHECK(admissible(t, {1, 3, 3}));
  CHECK(!admissible(t, {1, 6}));
  CHECK(admissible(kek, {4, 2}));
  CHECK(admissible(kek, {4, 5}));
  CHECK(!admissible(kek, {4, 6}));
  CHECK(!admissible(kek, {4, 1}));
  CHECK(omega_t_check({1, 3, 3}));
  CHECK(!omega_t_check({1, 6}));
  CHECK(omega_t_check({7}));
}

TEST_CASE("cylinders agree with the preimage oracle") {
  const SchweitzerT t;
  const auto frozen = ref::frozen()["t_cylinders"];
  for (auto it = frozen.begin(); it != frozen.end(); ++it) {
    const SymbolWord w = parse_word(it.key());
    const auto c = cylinder(t, w);
    CAPTURE(it.key());
    CHECK(c.left == q(it.value()[0].get<std::string>().c_str()));
    CHECK(c.right == q(it.value()[1].get<std::string>().c_str()));
    const auto [lo, hi] = ref::t_cylinder_by_preimages(w);
    CHECK(c.left == lo);
    CHECK(c.right == hi);
  }
}

TEST_CASE("round trip, nesting and widths along orbits") {
  const SchweitzerT t;
  for (long d : {7L, 9L, 13L, 101L, 997L}) {
    for (long p = 1; p < 3 * d; p += 5) {
      if (p % d == 0) continue;
      const Rational x{BigInt(p), BigInt(d)};
      SymbolWord w;
      try {
        w = itinerary(t, x, 12);
      } catch (const IntegerHit&) {
        continue;
      }
      CylinderBuilder b(t, w.front());
      Rational prev_l = b.cylinder().left, prev_r = b.cylinder().right;
      for (std::size_t k = 1; k < w.size(); ++k) {
        const BigInt m = b.last_branch().count();
        b.extend(w[k]);
        const auto& c = b.cylinder();
        CAPTURE(x.str());
        CHECK(c.left < x);
        CHECK(x < c.right);
        CHECK(prev_l <= c.left);
        CHECK(c.right <= prev_r);
        CHECK((c.right - c.left) * Rational(m) == prev_r - prev_l);
        CHECK(c.right - c.left == Rational(BigInt(1), c.width_denominator));
        prev_l = c.left;
        prev_r = c.right;
      }
      const auto [lo, hi] = ref::t_cylinder_by_preimages(w);
      CHECK(b.cylinder().left == lo);
      CHECK(b.cylinder().right == hi);
    }
  }
}

TEST_CASE("children tile the parent in tag order") {
  const SchweitzerT t;
  const Kek kek;
  const PosrecEscapes pe;
  for (const System* s : std::initializer_list<const System*>{&t, &kek, &pe}) {
    for (const SymbolWord& prefix : {SymbolWord{1}, SymbolWord{4}, SymbolWord{2, 5}, SymbolWord{4, 2, 3}}) {
      if (!admissible(*s, prefix)) continue;
      const auto parent = cylinder(*s, prefix);
      const auto last = s->branch(prefix.back());
      std::vector<CylinderInterval> kids;
      std::vector<BigInt> symbols;
      for (BigInt k = last.first_target(); k <= last.last_target(); ++k) {
        SymbolWord w = prefix;
        w.push_back(k);
        kids.push_back(cylinder(*s, w));
        symbols.push_back(k);
      }
      std::vector<std::size_t> order(kids.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return kids[a].left < kids[b].left; });
      CAPTURE(s->name());
      CAPTURE(to_string(prefix));
      CHECK(kids[order.front()].left == parent.left);
      CHECK(kids[order.back()].right == parent.right);
      for (std::size_t i = 0; i < order.size(); ++i) {
        CHECK(kids[order[i]].tags.back() == BigInt(static_cast<unsigned long>(i)));
        if (i + 1 < order.size()) CHECK(kids[order[i]].right == kids[order[i + 1]].left);
      }
      const bool increasing_symbols = symbols[order.front()] < symbols[order.back()];
      CHECK(increasing_symbols == (parent.direction == Direction::forward));
    }
  }
}

TEST_CASE("one step image of a cylinder is the shifted cylinder") {
  const SchweitzerT t;
  for (const SymbolWord& w : {SymbolWord{1, 3, 3}, SymbolWord{4, 2, 5, 9}, SymbolWord{6, 17, 20, 1}}) {
    REQUIRE(admissible(t, w));
    const auto c = cylinder(t, w);
    const auto shifted = cylinder(t, SymbolWord(w.begin() + 1, w.end()));
    const auto b = t.branch(w.front());
    const Rational a = b.apply(c.left), z = b.apply(c.right);
    CHECK(min(a, z) == shifted.left);
    CHECK(max(a, z) == shifted.right);
  }
}

TEST_CASE("regressors") {
  const Kek kek;
  const SchweitzerT t;
  const auto r = regressors(kek, q("14/15"), 2);
  CHECK(r.lower == std::vector<Rational>{Rational(0), q("3/4"), q("7/8")});
  CHECK(r.differences == std::vector<Rational>{q("3/4"), q("1/8")});
  const auto rt = regressors(t, q("1/2"), 1);
  CHECK(rt.lower[1] == q("2/5"));
  CHECK(rt.upper[1] == q("3/5"));
  const auto r0 = regressors(t, q("17/3"), 0);
  CHECK(r0.lower == std::vector<Rational>{Rational(5)});
  CHECK(r0.upper == std::vector<Rational>{Rational(6)});
}

TEST_CASE("expansivity width") {
  const SchweitzerT t;
  const Kek kek;
  CHECK(expansivity_width(kek, {1, 4, 4}) == q("1/16"));
  CHECK(expansivity_width(t, {9}) == Rational(1));
  const SymbolWord w = itinerary(t, q("3/7"), 10);
  CHECK(expansivity_width(t, w) <= Rational(BigInt(1), ref::pow4(0) * BigInt(9765625)));  // 5^-10
  CHECK_THROWS_AS(expansivity_width(t, {1, 6}), AdmissibilityError);
}

TEST_CASE("word text form") {
  CHECK(to_string(SymbolWord{1, 3, 3}) == "1,3,3");
  CHECK(parse_word("4, 2") == SymbolWord{4, 2});
  CHECK_THROWS_AS(parse_word("1,,2"), SpecError);
}
