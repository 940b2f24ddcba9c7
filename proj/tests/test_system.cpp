#include <doctest.h>

#include "oracles/reference.hpp"
#include "pwmarkov/errors.hpp"
#include "pwmarkov/system.hpp"

using namespace pwm;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST_CASE("ell") {
  CHECK(ell(Rational(0)) == 1);
  CHECK(ell(Rational(4)) == 1);
  CHECK(ell(Rational(5)) == 2);
  CHECK(ell(Rational(17)) == 3);
  CHECK(ell(q("16/1")) == 2);
  CHECK(ell(q("33/2")) == 3);
  CHECK(ell(q("1/2")) == 1);
  CHECK_THROWS_AS(ell(q("-1/2")), DomainError);
  for (long x = 0; x < 5000; x += 7) {
    CAPTURE(x);
    CHECK(ell(Rational(x)) == ref::ell(BigInt(x)));
  }
}

TEST_CASE("T branches follow the integer values") {
  const SchweitzerT t;
  auto b1 = branch_of(t, 1);
  CHECK(b1.slope == 5);
  CHECK(b1.value_at_left == 0);
  CHECK(b1.image_lo == 0);
  CHECK(b1.image_hi == 5);
  auto b4 = branch_of(t, 4);
  CHECK(b4.slope == -5);
  CHECK(b4.value_at_left == 5);
  CHECK(b4.image_lo == 0);
  CHECK(b4.image_hi == 5);
  CHECK(branch_of(t, 5).slope == 17);
  CHECK(branch_of(t, 6).slope == -17);
  CHECK(branch_of(t, 17).slope == 65);
  CHECK_THROWS_AS(branch_of(t, 0), DomainError);
  // ell of n and of the odd endpoint agree for every n
  for (long n = 1; n < 3000; ++n) {
    const BigInt odd = n % 2 ? BigInt(n) : BigInt(n - 1);
    CHECK(ell(Rational(n)) == ell(Rational(odd)));
  }
}

TEST_CASE("eval matches the direct formulas") {
  const SchweitzerT t;
  const Kek kek;
  const PosrecEscapes pe;
  CHECK(eval(t, q("1/2")) == q("5/2"));
  CHECK(eval(t, q("5/2")) == q("5/2"));
  CHECK(eval(t, Rational(3)) == Rational(5));
  CHECK(eval(t, Rational(4)) == Rational(0));
  CHECK(eval(kek, q("14/15")) == q("56/15"));
  CHECK_THROWS_AS(eval(kek, Rational(2)), IntegerHit);
  for (long p = 1; p < 400; ++p) {
    for (long d : {3L, 7L, 10L, 31L}) {
      if (p % d == 0) continue;
      const Rational x{BigInt(p), BigInt(d)};
      CAPTURE(x.str());
      CHECK(eval(t, x) == ref::t_map(x));
      CHECK(eval(kek, x) == ref::kek_map(x));
      CHECK(eval(pe, x) == ref::posrec_map(x));
      // denominators never grow
      CHECK(mpz_divisible_p(x.den().get_mpz_t(), eval(t, x).den().get_mpz_t()));
    }
  }
}

TEST_CASE("Kek branches") {
  const Kek kek;
  auto b = branch_of(kek, 4);
  CHECK(b.slope == 4);
  CHECK(b.image_lo == 1);
  CHECK(b.image_hi == 5);
  CHECK(branch_of(kek, 2).image_lo == 0);
  CHECK(branch_of(kek, 2).image_hi == 4);
}

TEST_CASE("PosrecEscapes slopes and orbit identity") {
  const PosrecEscapes pe;
  CHECK(pe.slope_at(1) == 3);
  CHECK(pe.slope_at(2) == 13);
  CHECK(pe.slope_at(3) == 3);
  CHECK(pe.slope_at(7) == 53);
  CHECK(pe.slope_at(27) == 213);
  CHECK(pe.slope_at(28) == 3);
  const auto s = ref::posrec_s(20);
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(pe.s(k) == s[k]);
  const Orbit o = iterate(pe, q("1/2"), 15);
  REQUIRE(o.points.size() == 16);
  for (std::size_t k = 0; k < o.points.size(); ++k) CHECK(o.points[k] == Rational(s[k], BigInt(2)));
}

TEST_CASE("iterate") {
  const SchweitzerT t;
  const Orbit o = iterate(t, q("1/2"), 3);
  REQUIRE(o.points.size() == 4);
  CHECK(o.points[3] == q("5/2"));
  CHECK(!o.integer_hit_step);
  const Orbit hit = iterate(t, q("1/5"), 2);
  CHECK(hit.points.size() == 1);
  REQUIRE(hit.integer_hit_step);
  CHECK(*hit.integer_hit_step == 1);
  CHECK(*hit.integer_hit_value == Rational(1));
}

TEST_CASE("Zold blocks") {
  const Zold z({});
  // n_k = k: s = 0, 1, 3, 6, 10, ...
  CHECK(z.block_start(1) == 0);
  CHECK(z.block_start(2) == 1);
  CHECK(z.block_start(5) == 10);
  BigInt expected_block = 1;
  for (long n = 1; n < 20000; ++n) {
    while (z.block_start(expected_block + 1) < n) ++expected_block;
    CHECK(z.block_of(n) == expected_block);
  }
  auto b = branch_of(z, 5);  // block 3: s_3 = 3, n_3 = 3
  CHECK(b.slope == 4);
  CHECK(b.image_lo == 3);
  CHECK(b.image_hi == 7);
  // huge states take the exact path
  const BigInt big = BigInt(1) << 100;
  const BigInt k = z.block_of(big);
  CHECK(z.block_start(k) < big);
  CHECK(z.block_start(k + 1) >= big);

  const Zold custom({{2, 5, 1}, false});
  CHECK(custom.block_start(4) == 8);
  CHECK(custom.block_size(4) == 4);
  CHECK(custom.block_of(8) == 3);
  CHECK(custom.block_of(9) == 4);
  CHECK(custom.block_of(12) == 4);
  CHECK(custom.block_of(13) == 5);
  CHECK_THROWS_AS(Zold({{0}, false}), SpecError);

  const Zold literal({{}, true});
  auto lb = branch_of(literal, 5);
  CHECK(lb.value_at_left == 4 * 4 + 3);
}

TEST_CASE("validate") {
  const SchweitzerT t;
  const auto r = validate(t, 1, 1000);
  CHECK(r.ok());
  CHECK(r.branches_checked == 1000);
  CHECK(validate(Kek{}, 1, 500).ok());
  CHECK(validate(PosrecEscapes{}, 1, 500).ok());
  CHECK(validate(Zold{{}}, 1, 500).ok());
  CHECK(validate(Extransi{}, 1, 200).ok());

  const auto bad_slope = load_custom_system(R"({"name":"flat","branches":[{"n":1,"slope":1,"f_left":0}],
      "tail":{"kind":"repeat-last-branch-shape"}})");
  const auto r1 = validate(*bad_slope, 1, 10);
  REQUIRE(!r1.ok());
  CHECK(r1.violation->check == "slope-magnitude");
  CHECK(r1.violation->index == 1);

  const auto gap = load_custom_system(R"({"name":"gap","branches":[{"n":1,"slope":3,"f_left":0},
      {"n":2,"slope":3,"f_left":1}]})");
  const auto r2 = validate(*gap, 1, 2);
  REQUIRE(!r2.ok());
  CHECK(r2.violation->check == "markov-consistency");
}

TEST_CASE("custom systems") {
  const auto s = load_custom_system(R"({"name":"mini","branches":[
      {"n":"1","slope":2,"f_left":0},{"n":2,"slope":-2,"f_left":2}],
      "tail":{"kind":"constant-slope","k":3}})");
  CHECK(s->name() == "mini");
  CHECK(branch_of(*s, 2).image_lo == 0);
  CHECK(branch_of(*s, 9).slope == 3);
  CHECK(branch_of(*s, 9).image_hi == 3);
  CHECK_THROWS_AS(branch_of(*s, 0), DomainError);
  CHECK(validate(*s, 1, 50).ok());

  const auto two_sided = load_custom_system(R"({"name":"two","branches":[
      {"n":-1,"slope":3,"f_left":-2},{"n":0,"slope":-3,"f_left":1},{"n":1,"slope":3,"f_left":-2}]})");
  CHECK(validate(*two_sided, -1, 1).ok());
  CHECK(eval(*two_sided, q("-3/2")) == q("-1/2"));

  const auto no_tail = load_custom_system(R"({"branches":[{"n":1,"slope":2,"f_left":0}]})");
  CHECK_THROWS_AS(branch_of(*no_tail, 3), SpecError);

  const auto holey = load_custom_system(R"({"branches":[{"n":1,"slope":2,"f_left":0},{"n":3,"slope":2,"f_left":0}]})");
  CHECK_THROWS_AS(branch_of(*holey, 2), SpecError);

  CHECK_THROWS_AS(load_custom_system("{"), SpecError);
  CHECK_THROWS_AS(load_custom_system(R"({"branches":[]})"), SpecError);
  CHECK_THROWS_AS(load_custom_system(R"({"branches":[{"n":1,"slope":0,"f_left":0}]})"), SpecError);
  CHECK_THROWS_AS(load_custom_system(R"({"branches":[{"n":1,"slope":2,"f_left":0},{"n":1,"slope":2,"f_left":0}]})"),
                  SpecError);
  CHECK_THROWS_AS(load_custom_system(R"({"branches":[{"n":1,"slope":2,"f_left":0}],"tail":{"kind":"spiral"}})"),
                  SpecError);
  CHECK_THROWS_AS(load_custom_system(R"({"branches":[{"n":1.5,"slope":2,"f_left":0}]})"), SpecError);
}

TEST_CASE("builtin factory") {
  CHECK(make_builtin("T")->name() == "T");
  CHECK(make_builtin("schweitzerT")->name() == "T");
  CHECK(make_builtin("kek")->name() == "Kek");
  CHECK_THROWS_AS(make_builtin("tent"), SpecError);
}

TEST_CASE("run_end never crosses a shape change") {
  const SchweitzerT t;
  const Kek kek;
  const PosrecEscapes pe;
  const Zold z({});
  const Extransi ex;
  for (const System* s : std::initializer_list<const System*>{&t, &kek, &pe, &z, &ex}) {
    for (long n = 1; n < 400; ++n) {
      const BigInt end = s->run_end(n, 400);
      CAPTURE(s->name());
      CAPTURE(n);
      CHECK(end >= n);
      CHECK(end <= 400);
      const auto b = s->branch(n);
      for (BigInt m = n; m <= end; ++m) {
        const auto c = s->branch(m);
        CHECK(c.image_lo == b.image_lo);
        CHECK(c.image_hi == b.image_hi);
        CHECK(c.count() == b.count());
      }
    }
  }
}
