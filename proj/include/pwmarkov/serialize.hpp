#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pwmarkov/chain.hpp"
#include "pwmarkov/orbits.hpp"
#include "pwmarkov/shadowing.hpp"

namespace pwm::io {

enum class Format { json, csv };

struct Style {
  Format format = Format::json;
  bool approx = false;  // add decimal renderings next to the exact values
};

std::string orbit(const std::string& system, const Orbit& orbit, const Style& style);
std::string itinerary(const SymbolWord& word, const Style& style);
std::string cylinder(const SymbolWord& word, const CylinderInterval& c, const Style& style);
std::string classification(const Rational& x, const Classification& c, const Style& style);
std::string series(const TagSeries& s, const Style& style);
std::string regressors(const Regressors& r, const Style& style);
std::string positions(const std::vector<Rational>& values, const Style& style);
std::string bottleneck(const std::vector<std::pair<BigInt, Rational>>& values, const Style& style);
std::string ergod(const ErgodAudit& audit, const Style& style);
std::string pigeonhole(std::size_t horizon, const std::vector<RadiusVisits>& visits, const Style& style);

std::string pseudo_orbit(const PseudoOrbit& p, const Style& style);
/// {"delta": "p/q", "points": ["p/q", ...]}
PseudoOrbit parse_pseudo_orbit(std::string_view json_text);
std::string shadow(const ShadowCertificate& cert, const ShadowReport* report, const Style& style);

std::string transition_row(const TransitionRow& row, const Style& style);
std::string walk_stats(const WalkStats& stats, const Style& style);
std::string block_audit(const BlockEscapeReport& report, const Style& style);
std::string extransi_params(const std::vector<ExtransiParams>& rows, const Style& style);
std::string extransi_walk(const ExtransiWalkReport& report, const Style& style);
std::string validation(const std::string& system, const ValidationReport& report, const Style& style);

}  // namespace pwm::io
