#include "pwmarkov/serialize.hpp"

#include <sstream>

#include <json.hpp>

#include "pwmarkov/errors.hpp"

namespace pwm::io {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kApproxDigits = 17;

void put(Json& obj, const std::string& key, const Rational& r, const Style& style) {
  obj[key] = r.str();
  if (style.approx) obj[key + "_approx"] = r.decimal(kApproxDigits);
}

void put_list(Json& obj, const std::string& key, const std::vector<Rational>& values, const Style& style) {
  Json exact = Json::array();
  Json approx = Json::array();
  for (const auto& v : values) {
    exact.push_back(v.str());
    if (style.approx) approx.push_back(v.decimal(kApproxDigits));
  }
  obj[key] = std::move(exact);
  if (style.approx) obj[key + "_approx"] = std::move(approx);
}

Json ints(const std::vector<BigInt>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_json(const Style& style, std::string_view what) {
  if (style.format == Format::csv) throw SpecError(std::string(what) + " has no CSV form; use --format json");
}

// Rows of "p/q" cells with an optional decimal column after each rational.
class Csv {
 public:
  Csv(const Style& style, std::vector<std::string> columns, std::vector<bool> rational)
      : style_(style), rational_(std::move(rational)) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      cell(columns[i]);
      if (style_.approx && rational_[i]) cell(columns[i] + "_approx");
    }
    end_row();
  }
  Csv& text(const std::string& s) {
    cell(s);
    return *this;
  }
  Csv& rat(const Rational& r) {
    cell(r.str());
    if (style_.approx) cell(r.decimal(kApproxDigits));
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }
  std::string str() const { return out_.str(); }

 private:
  void cell(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
  }

  const Style& style_;
  std::vector<bool> rational_;
  std::ostringstream out_;
  bool first_ = true;
};

Json cylinder_json(const CylinderInterval& c, const Style& style) {
  Json j;
  put(j, "left", c.left, style);
  put(j, "right", c.right, style);
  j["depth"] = c.depth;
  j["direction"] = std::string(to_string(c.direction));
  j["tags"] = ints(c.tags);
  j["width_denominator"] = to_string(c.width_denominator);
  return j;
}

Json visits_json(const std::vector<RadiusVisits>& visits) {
  Json out = Json::array();
  for (const auto& v : visits) {
    Json row;
    row["radius"] = to_string(v.radius);
    row["visits"] = v.visits;
    row["limit"] = to_string(v.limit);
    row["exceeded"] = v.exceeded;
    out.push_back(std::move(row));
  }
  return out;
}

Rational parse_rational_field(const Json& v, const std::string& what) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(BigInt(v.get<long>()));
  throw SpecError(what + " must be a \"p/q\" string");
}

}  // namespace

std::string orbit(const std::string& system, const Orbit& orbit, const Style& style) {
  if (style.format == Format::csv) {
    Csv csv(style, {"k", "x"}, {false, true});
    for (std::size_t k = 0; k < orbit.points.size(); ++k) {
      csv.text(std::to_string(k)).rat(orbit.points[k]).end_row();
    }
    return csv.str();
  }
  Json j;
  j["system"] = system;
  put_list(j, "points", orbit.points, style);
  if (orbit.integer_hit_step) {
    Json hit;
    hit["step"] = *orbit.integer_hit_step;
    hit["value"] = orbit.integer_hit_value->str();
    j["integer_hit"] = std::move(hit);
  }
  return dump(j);
}

std::string itinerary(const SymbolWord& word, const Style& style) {
  if (style.format == Format::csv) return to_string(word) + "\n";
  Json j;
  j["word"] = to_string(word);
  return dump(j);
}

std::string cylinder(const SymbolWord& word, const CylinderInterval& c, const Style& style) {
  require_json(style, "cylinder");
  Json j;
  j["word"] = to_string(word);
  j.update(cylinder_json(c, style));
  return dump(j);
}

std::string classification(const Rational& x, const Classification& c, const Style& style) {
  require_json(style, "classification");
  Json j;
  j["x"] = x.str();
  j["outcome"] = std::string(to_string(c.outcome));
  switch (c.outcome) {
    case Outcome::eventually_periodic:
      j["preperiod"] = c.preperiod;
      j["period"] = c.period;
      j["state_period"] = c.state_period;
      break;
    case Outcome::hits_integer:
      j["step"] = c.integer_step;
      j["value"] = c.integer_value ? c.integer_value->str() : "";
      break;
    case Outcome::undetermined:
      j["max_abs_index"] = to_string(c.max_abs_index);
      j["monotone_escape"] = c.monotone_escape;
      break;
  }
  j["steps"] = c.steps_run;
  if (c.outcome != Outcome::undetermined) j["verified"] = c.verified;
  j["visit_audit"] = visits_json(c.visit_audit);
  j["findings"] = c.findings;
  return dump(j);
}

std::string series(const TagSeries& s, const Style& style) {
  // L_k accumulates exactly as the partial sums.
  std::vector<Rational> partial{Rational(s.a0)};
  for (std::size_t k = 1; k <= s.digits.size(); ++k) partial.push_back(cantor_partial_sum(s, k));
  if (style.format == Format::csv) {
    Csv csv(style, {"k", "a_k", "m_k", "L_k"}, {false, false, false, true});
    csv.text("0").text(to_string(s.a0)).text("").rat(partial[0]).end_row();
    for (std::size_t k = 1; k <= s.digits.size(); ++k) {
      csv.text(std::to_string(k)).text(to_string(s.digits[k - 1])).text(to_string(s.bases[k - 1]))
          .rat(partial[k]).end_row();
    }
    return csv.str();
  }
  Json j;
  j["a0"] = to_string(s.a0);
  j["tags"] = ints(s.digits);
  j["bases"] = ints(s.bases);
  put_list(j, "partial_sums", partial, style);
  return dump(j);
}

std::string regressors(const Regressors& r, const Style& style) {
  if (style.format == Format::csv) {
    Csv csv(style, {"k", "L_k", "U_k", "d_k"}, {false, true, true, true});
    for (std::size_t k = 0; k < r.lower.size(); ++k) {
      csv.text(std::to_string(k)).rat(r.lower[k]).rat(r.upper[k]);
      if (k == 0) {
        csv.text("");
        if (style.approx) csv.text("");
      } else {
        csv.rat(r.differences[k - 1]);
      }
      csv.end_row();
    }
    return csv.str();
  }
  Json j;
  put_list(j, "lower", r.lower, style);
  put_list(j, "upper", r.upper, style);
  put_list(j, "differences", r.differences, style);
  return dump(j);
}

std::string positions(const std::vector<Rational>& values, const Style& style) {
  if (style.format == Format::csv) {
    Csv csv(style, {"n0", "position"}, {false, true});
    for (std::size_t k = 0; k < values.size(); ++k) csv.text(std::to_string(k + 1)).rat(values[k]).end_row();
    return csv.str();
  }
  Json j;
  put_list(j, "positions", values, style);
  return dump(j);
}

std::string bottleneck(const std::vector<std::pair<BigInt, Rational>>& values, const Style& style) {
  if (style.format == Format::csv) {
    Csv csv(style, {"N", "bottleneck"}, {false, true});
    for (const auto& [n, v] : values) csv.text(to_string(n)).rat(v).end_row();
    return csv.str();
  }
  Json rows = Json::array();
  for (const auto& [n, v] : values) {
    Json row;
    row["N"] = to_string(n);
    put(row, "value", v, style);
    rows.push_back(std::move(row));
  }
  Json j;
  j["bottleneck"] = std::move(rows);
  return dump(j);
}

std::string ergod(const ErgodAudit& a, const Style& style) {
  require_json(style, "ergod audit");
  Json j;
  j["N"] = to_string(a.big_n);
  j["q"] = to_string(a.q);
  put(j, "average", a.average, style);
  put(j, "bound", a.bound, style);
  j["outcome"] = std::string(to_string(a.outcome));
  j["applicable"] = a.applicable;
  j["holds"] = a.holds;
  return dump(j);
}

std::string pigeonhole(std::size_t horizon, const std::vector<RadiusVisits>& visits, const Style& style) {
  if (style.format == Format::csv) {
    Csv csv(style, {"radius", "visits", "limit", "exceeded"}, {false, false, false, false});
    for (const auto& v : visits) {
      csv.text(to_string(v.radius)).text(std::to_string(v.visits)).text(to_string(v.limit))
          .text(v.exceeded ? "true" : "false").end_row();
    }
    return csv.str();
  }
  Json j;
  j["horizon"] = horizon;
  j["visit_audit"] = visits_json(visits);
  return dump(j);
}

std::string pseudo_orbit(const PseudoOrbit& p, const Style& style) {
  require_json(style, "pseudo-orbit");
  Json j;
  j["delta"] = p.delta.str();
  put_list(j, "points", p.points, style);
  return dump(j);
}

PseudoOrbit parse_pseudo_orbit(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("pseudo-orbit is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("delta") || !doc.contains("points") || !doc["points"].is_array()) {
    throw SpecError("pseudo-orbit must look like {\"delta\": \"p/q\", \"points\": [\"p/q\", ...]}");
  }
  PseudoOrbit p;
  p.delta = parse_rational_field(doc["delta"], "delta");
  for (const auto& v : doc["points"]) p.points.push_back(parse_rational_field(v, "point"));
  return p;
}

std::string shadow(const ShadowCertificate& cert, const ShadowReport* report, const Style& style) {
  require_json(style, "shadow certificate");
  Json j;
  j["mode"] = std::string(to_string(cert.mode));
  j["delta"] = cert.delta.str();
  if (cert.z0) put(j, "z0", *cert.z0, style);
  j["word"] = to_string(cert.word);
  j["admissible"] = cert.admissible;
  if (cert.admissible) {
    j["shadow"] = cylinder_json(cert.shadow, style);
    put_list(j, "deviations", cert.deviations, style);
    put_list(j, "tail_widths", cert.tail_widths, style);
    put(j, "max_deviation", cert.max_deviation, style);
  }
  put(j, "theorem_bound", cert.theorem_bound, style);
  j["findings"] = cert.findings;
  if (report) {
    Json v;
    put(v, "epsilon", report->epsilon, style);
    put(v, "max_deviation", report->max_deviation, style);
    v["pass"] = report->pass;
    if (report->first_violation) v["first_violation"] = *report->first_violation;
    v["findings"] = report->findings;
    j["verification"] = std::move(v);
  }
  return dump(j);
}

std::string transition_row(const TransitionRow& row, const Style& style) {
  if (style.format == Format::csv) {
    Csv csv(style, {"state", "target", "probability"}, {false, false, true});
    for (BigInt t = row.first; t <= row.last; ++t) {
      csv.text(to_string(row.state)).text(to_string(t)).rat(row.probability).end_row();
    }
    return csv.str();
  }
  Json j;
  j["state"] = to_string(row.state);
  j["first"] = to_string(row.first);
  j["last"] = to_string(row.last);
  j["count"] = to_string(row.size());
  put(j, "probability", row.probability, style);
  put(j, "total", row.probability * Rational(row.size()), style);
  return dump(j);
}

std::string walk_stats(const WalkStats& s, const Style& style) {
  if (style.format == Format::csv) {
    Csv csv(style, {"t", "count"}, {false, false});
    for (const auto& [t, c] : s.histogram) csv.text(std::to_string(t)).text(std::to_string(c)).end_row();
    return csv.str();
  }
  Json j;
  j["walks"] = s.walks;
  j["seed"] = s.seed;
  j["cap"] = s.cap;
  j["start"] = to_string(s.start);
  j["targets"] = ints(s.targets);
  if (s.mean) {
    put(j, "mean", *s.mean, style);
  } else {
    j["mean"] = nullptr;
  }
  j["returned"] = s.returned;
  j["censored"] = s.censored;
  j["max_state"] = to_string(s.max_state);
  Json hist = Json::array();
  for (const auto& [t, c] : s.histogram) hist.push_back({{"t", t}, {"count", c}});
  j["histogram"] = std::move(hist);
  return dump(j);
}

std::string block_audit(const BlockEscapeReport& r, const Style& style) {
  require_json(style, "block audit");
  Json j;
  j["walks"] = r.walks;
  j["steps"] = r.steps;
  j["seed"] = r.seed;
  j["violations"] = r.violations;
  j["support_checks"] = r.support_checks;
  j["findings"] = r.findings;
  Json fin = Json::array();
  for (const auto& [b, c] : r.final_blocks) fin.push_back({{"block", to_string(b)}, {"count", c}});
  j["final_blocks"] = std::move(fin);
  Json drift = Json::array();
  for (const auto& d : r.drift) {
    Json row;
    row["step"] = d.step;
    put(row, "mean_block", d.mean_block, style);
    drift.push_back(std::move(row));
  }
  j["drift"] = std::move(drift);
  j["drift_nondecreasing"] = r.drift_nondecreasing;
  return dump(j);
}

std::string extransi_params(const std::vector<ExtransiParams>& rows, const Style& style) {
  if (style.format == Format::csv) {
    Csv csv(style, {"n", "P", "S", "h", "up_probability"}, {false, false, false, false, true});
    for (const auto& r : rows) {
      csv.text(std::to_string(r.enclosure.n)).text(to_string(r.p)).text(to_string(r.s)).text(to_string(r.h))
          .rat(r.up_probability).end_row();
    }
    return csv.str();
  }
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["n"] = r.enclosure.n;
    Json p;
    p["lower"] = r.enclosure.p_lower.decimal(30);
    p["upper"] = r.enclosure.p_upper.decimal(30);
    p["precision_bits"] = r.enclosure.precision_bits;
    j["p_enclosure"] = std::move(p);
    j["P"] = to_string(r.p);
    j["S"] = to_string(r.s);
    j["h"] = to_string(r.h);
    put(j, "up_probability", r.up_probability, style);
    put(j, "up_given_leave", r.up_given_leave, style);
    j["up_given_leave_at_least_p"] = r.up_given_leave_certified;
    out.push_back(std::move(j));
  }
  Json j;
  j["extransi"] = std::move(out);
  return dump(j);
}

std::string extransi_walk(const ExtransiWalkReport& r, const Style& style) {
  require_json(style, "Extransi walk");
  Json j;
  j["walks"] = r.walks;
  j["steps"] = r.steps;
  j["seed"] = r.seed;
  j["start_block"] = r.start_block;
  Json fin = Json::array();
  for (const auto& [b, c] : r.final_blocks) fin.push_back({{"block", b}, {"count", c}});
  j["final_blocks"] = std::move(fin);
  Json mx = Json::array();
  for (const auto& [b, c] : r.max_blocks) mx.push_back({{"block", b}, {"count", c}});
  j["max_blocks"] = std::move(mx);
  j["up_moves"] = r.up_moves;
  j["moves"] = r.moves_from_block;
  if (r.moves_from_block > 0) {
    put(j, "up_rate", Rational(BigInt(static_cast<unsigned long>(r.up_moves)),
                               BigInt(static_cast<unsigned long>(r.moves_from_block))), style);
  }
  return dump(j);
}

std::string validation(const std::string& system, const ValidationReport& r, const Style& style) {
  require_json(style, "validation report");
  Json j;
  j["system"] = system;
  j["from"] = to_string(r.from);
  j["to"] = to_string(r.to);
  j["branches_checked"] = r.branches_checked;
  j["ok"] = r.ok();
  if (r.violation) {
    Json v;
    v["index"] = to_string(r.violation->index);
    v["check"] = r.violation->check;
    v["message"] = r.violation->message;
    j["violation"] = std::move(v);
  }
  return dump(j);
}

}  // namespace pwm::io
