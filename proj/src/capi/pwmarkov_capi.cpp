#include "pwmarkov/pwmarkov.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "pwmarkov/errors.hpp"
#include "pwmarkov/serialize.hpp"

struct pwm_system {
  pwm::SystemPtr impl;
};

namespace {

thread_local std::string last_error;

pwm_status status_of(pwm::ErrorCode code) { return static_cast<pwm_status>(static_cast<int>(code)); }

template <class Fn>
pwm_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return PWM_OK;
  } catch (const pwm::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return PWM_ERR_INTERNAL;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void emit(char** out, const std::string& s) {
  if (!out) throw pwm::SpecError("output pointer is null");
  *out = copy_out(s);
}

const pwm::System& sys(const pwm_system* s) {
  if (!s || !s->impl) throw pwm::SpecError("system handle is null");
  return *s->impl;
}

std::string text(const char* s, const char* what) {
  if (!s) throw pwm::SpecError(std::string(what) + " is missing");
  return s;
}

pwm::Rational rat(const char* s, const char* what) { return pwm::Rational::parse(text(s, what)); }
pwm::BigInt integer(const char* s, const char* what) { return pwm::parse_bigint(text(s, what)); }

std::vector<pwm::BigInt> int_list(const char* s, const char* what) {
  return pwm::parse_word(text(s, what));
}

pwm::io::Style style_of(const pwm_output* fmt) {
  pwm::io::Style st;
  if (fmt) {
    st.format = fmt->format == PWM_FORMAT_CSV ? pwm::io::Format::csv : pwm::io::Format::json;
    st.approx = fmt->approx != 0;
  }
  return st;
}

unsigned threads_of(const pwm_output* fmt) { return fmt && fmt->threads > 0 ? fmt->threads : 1; }

std::size_t size_arg(uint64_t v) { return static_cast<std::size_t>(v); }

const pwm::Extransi& extransi_instance() {
  static const pwm::Extransi e;
  return e;
}

}  // namespace

extern "C" {

const char* pwm_version(void) { return "0.1.0"; }

const char* pwm_last_error(void) { return last_error.c_str(); }

void pwm_free_string(char* s) { std::free(s); }

pwm_status pwm_system_builtin(const char* name, const char* zold_prefix, int zold_literal,
                              pwm_system** out) {
  return guarded([&] {
    if (!out) throw pwm::SpecError("output pointer is null");
    pwm::ZoldParams zold;
    if (zold_prefix && *zold_prefix) zold.prefix = pwm::parse_word(zold_prefix);
    zold.literal = zold_literal != 0;
    *out = new pwm_system{pwm::make_builtin(text(name, "system name"), zold)};
  });
}

pwm_status pwm_system_from_json(const char* json_text, pwm_system** out) {
  return guarded([&] {
    if (!out) throw pwm::SpecError("output pointer is null");
    *out = new pwm_system{pwm::load_custom_system(text(json_text, "system document"))};
  });
}

void pwm_system_free(pwm_system* system) { delete system; }

pwm_status pwm_system_name(const pwm_system* system, char** out) {
  return guarded([&] { emit(out, sys(system).name()); });
}

pwm_status pwm_eval(const pwm_system* system, const char* x, char** out) {
  return guarded([&] { emit(out, pwm::eval(sys(system), rat(x, "x")).str()); });
}

pwm_status pwm_orbit(const pwm_system* system, const char* x, uint64_t steps, const pwm_output* fmt,
                     char** out) {
  pwm_status hit_status = PWM_OK;
  const pwm_status st = guarded([&] {
    const auto& s = sys(system);
    const pwm::Orbit orbit = pwm::iterate(s, rat(x, "x"), size_arg(steps));
    emit(out, pwm::io::orbit(s.name(), orbit, style_of(fmt)));
    if (orbit.integer_hit_step) {
      last_error = pwm::IntegerHit(*orbit.integer_hit_step, orbit.integer_hit_value->str()).what();
      hit_status = PWM_ERR_INTEGER_HIT;
    }
  });
  if (st != PWM_OK) return st;
  return hit_status;
}

pwm_status pwm_itinerary(const pwm_system* system, const char* x, uint64_t depth,
                         const pwm_output* fmt, char** out) {
  return guarded([&] {
    emit(out, pwm::io::itinerary(pwm::itinerary(sys(system), rat(x, "x"), size_arg(depth)), style_of(fmt)));
  });
}

pwm_status pwm_cylinder(const pwm_system* system, const char* word, const pwm_output* fmt, char** out) {
  return guarded([&] {
    const auto w = int_list(word, "word");
    emit(out, pwm::io::cylinder(w, pwm::cylinder(sys(system), w), style_of(fmt)));
  });
}

pwm_status pwm_admissible(const pwm_system* system, const char* word, int* result) {
  return guarded([&] {
    if (!result) throw pwm::SpecError("output pointer is null");
    *result = pwm::admissible(sys(system), int_list(word, "word")) ? 1 : 0;
  });
}

pwm_status pwm_regressors(const pwm_system* system, const char* x, uint64_t depth,
                          const pwm_output* fmt, char** out) {
  return guarded([&] {
    emit(out, pwm::io::regressors(pwm::regressors(sys(system), rat(x, "x"), size_arg(depth)), style_of(fmt)));
  });
}

pwm_status pwm_classify(const pwm_system* system, const char* x, uint64_t max_steps, const char* alpha,
                        const char* radii, const pwm_output* fmt, char** out) {
  return guarded([&] {
    pwm::ClassifyOptions opts;
    opts.max_steps = size_arg(max_steps);
    if (alpha && *alpha) opts.alpha = pwm::parse_bigint(alpha);
    if (radii && *radii) opts.radii = pwm::parse_word(radii);
    const pwm::Rational v = rat(x, "x");
    emit(out, pwm::io::classification(v, pwm::classify(sys(system), v, opts), style_of(fmt)));
  });
}

pwm_status pwm_series(const pwm_system* system, const char* x, uint64_t n, const pwm_output* fmt,
                      char** out) {
  return guarded([&] {
    emit(out, pwm::io::series(pwm::tag_series(sys(system), rat(x, "x"), size_arg(n)), style_of(fmt)));
  });
}

pwm_status pwm_positions(const pwm_system* system, const char* x, uint64_t n, const pwm_output* fmt,
                         char** out) {
  return guarded([&] {
    emit(out, pwm::io::positions(pwm::position_sequence(sys(system), rat(x, "x"), size_arg(n)), style_of(fmt)));
  });
}

pwm_status pwm_bottleneck(const pwm_system* system, const char* n_list, const pwm_output* fmt, char** out) {
  return guarded([&] {
    std::vector<std::pair<pwm::BigInt, pwm::Rational>> rows;
    for (const auto& n : int_list(n_list, "N list")) rows.emplace_back(n, pwm::bottleneck(sys(system), n));
    emit(out, pwm::io::bottleneck(rows, style_of(fmt)));
  });
}

pwm_status pwm_ergod(const pwm_system* system, const char* x, const char* big_n, const pwm_output* fmt,
                     char** out) {
  return guarded([&] {
    emit(out, pwm::io::ergod(pwm::ergod_audit(sys(system), rat(x, "x"), integer(big_n, "N")), style_of(fmt)));
  });
}

pwm_status pwm_pigeonhole(const pwm_system* system, const char* x, uint64_t horizon, const char* radii,
                          const pwm_output* fmt, char** out) {
  return guarded([&] {
    std::vector<pwm::BigInt> r = radii && *radii ? pwm::parse_word(radii) : std::vector<pwm::BigInt>{1, 2, 4, 8};
    const auto visits = pwm::pigeonhole_audit(sys(system), rat(x, "x"), size_arg(horizon), r);
    emit(out, pwm::io::pigeonhole(size_arg(horizon), visits, style_of(fmt)));
  });
}

pwm_status pwm_pseudo_generate(const char* x0, const char* delta, uint64_t steps, uint64_t seed,
                               const pwm_output* fmt, char** out) {
  return guarded([&] {
    const auto p = pwm::gen_pseudo_orbit(rat(x0, "x0"), rat(delta, "delta"), size_arg(steps), seed);
    emit(out, pwm::io::pseudo_orbit(p, style_of(fmt)));
  });
}

pwm_status pwm_shadow(const pwm_system* system, const char* pseudo_json, const char* mode,
                      const char* verify, const pwm_output* fmt, char** out, int* passed) {
  return guarded([&] {
    if (passed) *passed = -1;
    const pwm::PseudoOrbit pseudo = pwm::io::parse_pseudo_orbit(text(pseudo_json, "pseudo-orbit"));
    pwm::ShadowMode m = pwm::ShadowMode::shifted;
    std::optional<pwm::Rational> epsilon;
    if (verify && *verify) {
      const std::string v = verify;
      if (v == "20delta") {
        m = pwm::ShadowMode::shifted;
        epsilon = pwm::Rational(20) * pseudo.delta;
      } else if (v == "21delta") {
        m = pwm::ShadowMode::prepended;
        epsilon = pwm::Rational(21) * pseudo.delta;
      } else if (v == "delta/4") {
        m = pwm::ShadowMode::direct;
        epsilon = pseudo.delta / pwm::Rational(4);
      } else {
        epsilon = pwm::Rational::parse(v);
      }
    }
    if (mode && *mode) m = pwm::parse_shadow_mode(mode);
    const auto cert = pwm::build_shadow(sys(system), pseudo, m);
    if (epsilon) {
      const auto report = pwm::verify_shadowing(sys(system), pseudo, cert, *epsilon);
      if (passed) *passed = report.pass ? 1 : 0;
      emit(out, pwm::io::shadow(cert, &report, style_of(fmt)));
    } else {
      emit(out, pwm::io::shadow(cert, nullptr, style_of(fmt)));
    }
  });
}

pwm_status pwm_transition_row(const pwm_system* system, const char* state, const pwm_output* fmt,
                              char** out) {
  return guarded([&] {
    emit(out, pwm::io::transition_row(pwm::transition_row(sys(system), integer(state, "state")), style_of(fmt)));
  });
}

pwm_status pwm_simulate_return(const pwm_system* system, const char* start, const char* targets,
                               uint64_t walks, uint64_t cap, uint64_t seed, const pwm_output* fmt,
                               char** out) {
  return guarded([&] {
    pwm::WalkOptions opts;
    opts.start = integer(start, "start");
    opts.targets = int_list(targets, "target set");
    opts.walks = walks;
    opts.cap = cap;
    opts.seed = seed;
    opts.threads = threads_of(fmt);
    emit(out, pwm::io::walk_stats(pwm::simulate_return(sys(system), opts), style_of(fmt)));
  });
}

pwm_status pwm_block_audit(const pwm_system* system, uint64_t walks, uint64_t steps, uint64_t seed,
                           const pwm_output* fmt, char** out) {
  return guarded([&] {
    const auto* zold = dynamic_cast<const pwm::Zold*>(&sys(system));
    if (!zold) throw pwm::Unsupported("block audit needs the Zold system");
    emit(out, pwm::io::block_audit(pwm::block_escape_audit(*zold, walks, steps, seed, threads_of(fmt)),
                                   style_of(fmt)));
  });
}

pwm_status pwm_extransi_params(const char* n_list, const pwm_output* fmt, char** out) {
  return guarded([&] {
    std::vector<pwm::ExtransiParams> rows;
    for (const auto& n : int_list(n_list, "n list")) {
      if (n < 1 || !n.fits_ulong_p()) throw pwm::DomainError("n must be a positive machine integer");
      rows.push_back(pwm::extransi_params(extransi_instance(), n.get_ui()));
    }
    emit(out, pwm::io::extransi_params(rows, style_of(fmt)));
  });
}

pwm_status pwm_extransi_walk(uint64_t walks, uint64_t steps, uint64_t seed, uint64_t start_block,
                             const pwm_output* fmt, char** out) {
  return guarded([&] {
    const auto report = pwm::extransi_block_walk(extransi_instance(), walks, steps, seed,
                                                 static_cast<unsigned long>(start_block), threads_of(fmt));
    emit(out, pwm::io::extransi_walk(report, style_of(fmt)));
  });
}

pwm_status pwm_validate(const pwm_system* system, const char* from, const char* to,
                        const pwm_output* fmt, char** out, int* ok) {
  return guarded([&] {
    const auto& s = sys(system);
    const auto report = pwm::validate(s, integer(from, "from"), integer(to, "to"));
    if (ok) *ok = report.ok() ? 1 : 0;
    emit(out, pwm::io::validation(s.name(), report, style_of(fmt)));
  });
}

}  // extern "C"
