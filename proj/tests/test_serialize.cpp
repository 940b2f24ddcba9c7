#include <doctest.h>

#include <json.hpp>

#include "pwmarkov/errors.hpp"
#include "pwmarkov/serialize.hpp"

using namespace pwm;
using nlohmann::json;

namespace {

Rational q(const char* s) { return Rational::parse(s); }
const io::Style kJson{io::Format::json, false};
const io::Style kJsonApprox{io::Format::json, true};
const io::Style kCsv{io::Format::csv, false};
const io::Style kCsvApprox{io::Format::csv, true};

}  // namespace

TEST_CASE("orbit") {
  const SchweitzerT t;
  const Orbit o = iterate(t, q("1/2"), 2);
  const json j = json::parse(io::orbit("T", o, kJson));
  CHECK(j["system"] == "T");
  CHECK(j["points"] == json::array({"1/2", "5/2", "5/2"}));
  CHECK(!j.contains("points_approx"));
  const json a = json::parse(io::orbit("T", o, kJsonApprox));
  CHECK(a["points_approx"][0].get<std::string>().rfind("0.5", 0) == 0);
  CHECK(io::orbit("T", o, kCsv) == "k,x\n0,1/2\n1,5/2\n2,5/2\n");
  CHECK(io::orbit("T", o, kCsvApprox) == "k,x,x_approx\n0,1/2,0.5\n1,5/2,2.5\n2,5/2,2.5\n");

  const Orbit hit = iterate(t, q("1/5"), 4);
  const json h = json::parse(io::orbit("T", hit, kJson));
  CHECK(h["points"].size() == 1);
  CHECK(h["integer_hit"]["step"] == 1);
  CHECK(h["integer_hit"]["value"] == "1/1");
}

TEST_CASE("cylinder and classification") {
  const SchweitzerT t;
  const SymbolWord w{4, 2};
  const json c = json::parse(io::cylinder(w, cylinder(t, w), kJson));
  CHECK(c["word"] == "4,2");
  CHECK(c["left"] == "18/5");
  CHECK(c["right"] == "19/5");
  CHECK(c["tags"] == json::array({"3"}));
  CHECK(c["direction"] == "forward");

  json k = json::parse(io::classification(q("1/2"), classify(t, q("1/2")), kJson));
  CHECK(k["outcome"] == "EventuallyPeriodic");
  CHECK(k["preperiod"] == 1);
  CHECK(k["verified"] == true);
  const Kek kek;
  k = json::parse(io::classification(q("14/15"), classify(kek, q("14/15"), {500, std::nullopt, {1}}), kJson));
  CHECK(k["outcome"] == "Undetermined");
  CHECK(!k.contains("verified"));
  CHECK(k["monotone_escape"] == true);
  CHECK_THROWS_AS(io::classification(q("1/2"), classify(t, q("1/2")), kCsv), SpecError);
}

TEST_CASE("series tables") {
  const Kek kek;
  const auto s = tag_series(kek, q("14/15"), 2);
  CHECK(io::series(s, kCsv) == "k,a_k,m_k,L_k\n0,0,,0/1\n1,3,4,3/4\n2,2,4,7/8\n");
  const json j = json::parse(io::series(s, kJson));
  CHECK(j["a0"] == "0");
  CHECK(j["tags"] == json::array({"3", "2"}));
  CHECK(j["partial_sums"][2] == "7/8");
  const auto r = regressors(kek, q("14/15"), 1);
  CHECK(io::regressors(r, kCsv).rfind("k,L_k,U_k,d_k\n", 0) == 0);
  const std::vector<std::pair<BigInt, Rational>> b{{BigInt(4), q("1/5")}};
  CHECK(io::bottleneck(b, kCsv) == "N,bottleneck\n4,1/5\n");
}

TEST_CASE("pseudo-orbit round trip and errors") {
  const auto p = gen_pseudo_orbit(q("1/3"), q("1/10"), 6, 2);
  const auto back = io::parse_pseudo_orbit(io::pseudo_orbit(p, kJson));
  CHECK(back.delta == p.delta);
  CHECK(back.points == p.points);
  CHECK_THROWS_AS(io::parse_pseudo_orbit("{"), SpecError);
  CHECK_THROWS_AS(io::parse_pseudo_orbit(R"({"delta": "1/10"})"), SpecError);
  CHECK_THROWS_AS(io::parse_pseudo_orbit(R"({"delta": "0.1", "points": ["1/2"]})"), SpecError);
  CHECK_THROWS_AS(io::parse_pseudo_orbit(R"({"delta": "1/10", "points": [0.5]})"), SpecError);
  const auto ok = io::parse_pseudo_orbit(R"({"delta": "1/10", "points": ["1/2", 3]})");
  CHECK(ok.points.back() == Rational(3));
}

TEST_CASE("shadow and chain outputs") {
  const SchweitzerT t;
  const auto p = gen_pseudo_orbit(q("1/3"), q("1/10"), 6, 2);
  const auto cert = build_shadow(t, p, ShadowMode::prepended);
  const auto rep = verify_shadowing(t, p, cert, cert.theorem_bound);
  const json j = json::parse(io::shadow(cert, &rep, kJson));
  CHECK(j["mode"] == "prepended");
  CHECK(j["theorem_bound"] == "21/10");
  CHECK(j["verification"]["pass"] == true);
  CHECK(j.contains("z0"));
  const json r = json::parse(io::transition_row(transition_row(t, 1), kJson));
  CHECK(r["first"] == "1");
  CHECK(r["last"] == "5");
  CHECK(r["probability"] == "1/5");

  const ValidationReport v = validate(t, 1, 20);
  const json vj = json::parse(io::validation("T", v, kJson));
  CHECK(vj["ok"] == true);
}
