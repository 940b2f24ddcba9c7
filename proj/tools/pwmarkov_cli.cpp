// Command-line front end. Everything numeric happens behind the C API; this
// file only parses arguments, moves strings and maps status codes to exit codes.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pwmarkov/pwmarkov.h"

namespace {

struct Common {
  std::string system;
  std::string zold_prefix;
  bool zold_literal = false;
  std::string format = "json";
  bool approx = false;
  unsigned threads = 1;
};

struct SystemDeleter {
  void operator()(pwm_system* s) const { pwm_system_free(s); }
};
using SystemHandle = std::unique_ptr<pwm_system, SystemDeleter>;

int exit_code(pwm_status st) {
  switch (st) {
    case PWM_OK: return 0;
    case PWM_ERR_SPEC: return 2;
    default: return 1;
  }
}

int fail(pwm_status st) {
  std::cerr << "error: " << pwm_last_error() << "\n";
  return exit_code(st);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// A readable file is a custom system document, anything else a builtin name.
pwm_status open_system(const Common& c, SystemHandle& handle) {
  pwm_system* raw = nullptr;
  std::string doc;
  pwm_status st;
  if (read_file(c.system, doc)) {
    st = pwm_system_from_json(doc.c_str(), &raw);
  } else {
    st = pwm_system_builtin(c.system.c_str(), c.zold_prefix.empty() ? nullptr : c.zold_prefix.c_str(),
                            c.zold_literal ? 1 : 0, &raw);
  }
  handle.reset(raw);
  return st;
}

pwm_output output_of(const Common& c) {
  pwm_output o;
  o.format = c.format == "csv" ? PWM_FORMAT_CSV : PWM_FORMAT_JSON;
  o.approx = c.approx ? 1 : 0;
  o.threads = c.threads;
  return o;
}

// Prints whatever the call produced, then reports a failing status.
int finish(pwm_status st, char* out) {
  if (out) {
    std::fputs(out, stdout);
    pwm_free_string(out);
  }
  if (st != PWM_OK) return fail(st);
  return 0;
}

template <class Call>
int with_system(const Common& c, Call call) {
  SystemHandle sys;
  if (const pwm_status st = open_system(c, sys); st != PWM_OK) return fail(st);
  const pwm_output fmt = output_of(c);
  char* out = nullptr;
  const pwm_status st = call(sys.get(), &fmt, &out);
  return finish(st, out);
}

void add_common(CLI::App* app, Common& c, bool needs_system = true) {
  if (needs_system) {
    app->add_option("--system", c.system, "builtin name (T, Kek, PosrecEscapes, Zold, Extransi) or system JSON file")
        ->required();
    app->add_option("--zold-prefix", c.zold_prefix, "explicit Zold block sizes n_1,n_2,...");
    app->add_flag("--zold-literal", c.zold_literal, "Zold with the unanchored branch rule");
  }
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_flag("--approx", c.approx, "add decimal renderings next to exact values");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic dynamics for piecewise-linear Markov interval maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pwm_version()));
  Common c;
  int rc = 0;

  std::string x;
  std::uint64_t steps = 10;
  auto* orbit = app.add_subcommand("orbit", "iterate f exactly");
  add_common(orbit, c);
  orbit->add_option("--x", x, "start point p/q")->required();
  orbit->add_option("--steps", steps, "number of steps");
  orbit->callback([&] {
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_orbit(s, x.c_str(), steps, f, out);
    });
  });

  std::uint64_t depth = 10;
  auto* itin = app.add_subcommand("itinerary", "branch indices visited by the orbit");
  add_common(itin, c);
  itin->add_option("--x", x, "point p/q")->required();
  itin->add_option("--depth", depth, "last step");
  itin->callback([&] {
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_itinerary(s, x.c_str(), depth, f, out);
    });
  });

  std::string word;
  bool check_only = false;
  auto* cyl = app.add_subcommand("cylinder", "exact cylinder interval of a symbol word");
  add_common(cyl, c);
  cyl->add_option("--word", word, "comma-separated branch indices")->required();
  cyl->add_flag("--admissible", check_only, "only report whether the word is realizable");
  cyl->callback([&] {
    if (check_only) {
      SystemHandle sys;
      if (const pwm_status st = open_system(c, sys); st != PWM_OK) {
        rc = fail(st);
        return;
      }
      int result = 0;
      if (const pwm_status st = pwm_admissible(sys.get(), word.c_str(), &result); st != PWM_OK) {
        rc = fail(st);
        return;
      }
      std::cout << "{\n  \"word\": \"" << word << "\",\n  \"admissible\": " << (result ? "true" : "false")
                << "\n}\n";
      return;
    }
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_cylinder(s, word.c_str(), f, out);
    });
  });

  std::uint64_t max_steps = 1000000;
  std::string alpha, radii, ergod_n;
  bool pigeonhole = false;
  auto* cls = app.add_subcommand("classify", "classify a rational orbit by the tag recursion");
  add_common(cls, c);
  cls->add_option("--x", x, "point p/q")->required();
  cls->add_option("--max-steps", max_steps, "step budget (also the audit horizon)");
  cls->add_option("--alpha", alpha, "declared bound on liminf |f^k(x)|");
  cls->add_option("--radii", radii, "comma-separated radii for the visit audit");
  cls->add_option("--ergod", ergod_n, "run the orbit-average audit with this N instead");
  cls->add_flag("--pigeonhole", pigeonhole, "run the visit-count audit only");
  cls->callback([&] {
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      if (!ergod_n.empty()) return pwm_ergod(s, x.c_str(), ergod_n.c_str(), f, out);
      if (pigeonhole) return pwm_pigeonhole(s, x.c_str(), max_steps, radii.c_str(), f, out);
      return pwm_classify(s, x.c_str(), max_steps, alpha.c_str(), radii.c_str(), f, out);
    });
  });

  std::uint64_t terms = 10;
  std::string kind = "tags";
  auto* ser = app.add_subcommand("series", "tags, regressors or position sequence of x");
  add_common(ser, c);
  ser->add_option("--x", x, "point p/q")->required();
  ser->add_option("--n", terms, "number of terms");
  ser->add_option("--kind", kind, "what to list")->check(CLI::IsMember({"tags", "regressors", "positions"}));
  ser->callback([&] {
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      if (kind == "regressors") return pwm_regressors(s, x.c_str(), terms, f, out);
      if (kind == "positions") return pwm_positions(s, x.c_str(), terms, f, out);
      return pwm_series(s, x.c_str(), terms, f, out);
    });
  });

  std::string n_list;
  auto* bot = app.add_subcommand("bottleneck", "exact bottleneck value for each N");
  add_common(bot, c);
  bot->add_option("--N", n_list, "comma-separated N values")->required();
  bot->callback([&] {
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_bottleneck(s, n_list.c_str(), f, out);
    });
  });

  std::string pseudo_path, mode, verify, x0, delta;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 40;
  bool emit_pseudo = false;
  auto* sh = app.add_subcommand("shadow", "shadow a pseudo-orbit of T by a true orbit");
  add_common(sh, c);
  auto* pseudo_opt = sh->add_option("--pseudo", pseudo_path, "pseudo-orbit JSON file");
  auto* x0_opt = sh->add_option("--x0", x0, "generate a pseudo-orbit from this start point instead");
  sh->add_option("--delta", delta, "noise bound for --x0");
  sh->add_option("--steps", horizon, "horizon for --x0");
  sh->add_option("--seed", seed, "generator seed for --x0");
  sh->add_flag("--emit-pseudo", emit_pseudo, "print the generated pseudo-orbit and stop");
  sh->add_option("--mode", mode, "shifted, direct or prepended");
  sh->add_option("--verify", verify, "20delta, 21delta, delta/4 or an explicit p/q");
  pseudo_opt->excludes(x0_opt);
  sh->callback([&] {
    std::string doc;
    const pwm_output fmt = output_of(c);
    if (!x0.empty()) {
      if (delta.empty()) {
        std::cerr << "error: --x0 needs --delta\n";
        rc = 2;
        return;
      }
      char* out = nullptr;
      const pwm_status st = pwm_pseudo_generate(x0.c_str(), delta.c_str(), horizon, seed, &fmt, &out);
      if (st != PWM_OK || emit_pseudo) {
        rc = finish(st, out);
        return;
      }
      doc = out;
      pwm_free_string(out);
    } else if (pseudo_path.empty()) {
      std::cerr << "error: give --pseudo FILE or --x0/--delta\n";
      rc = 2;
      return;
    } else if (!read_file(pseudo_path, doc)) {
      std::cerr << "error: cannot read " << pseudo_path << "\n";
      rc = 2;
      return;
    }
    int passed = -1;
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_shadow(s, doc.c_str(), mode.c_str(), verify.c_str(), f, out, &passed);
    });
    if (rc == 0 && passed == 0) {
      std::cerr << "verification failed\n";
      rc = 1;
    }
  });

  auto* chain = app.add_subcommand("chain", "associated Markov chain");
  chain->require_subcommand(1);

  std::string state;
  auto* row = chain->add_subcommand("row", "transition row of a state");
  add_common(row, c);
  row->add_option("--state", state, "state index")->required();
  row->callback([&] {
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_transition_row(s, state.c_str(), f, out);
    });
  });

  std::string start, targets;
  std::uint64_t walks = 1000, cap = 1000;
  auto* sim = chain->add_subcommand("simulate", "seeded first-hitting times of a target set");
  add_common(sim, c);
  sim->add_option("--start", start, "start state")->required();
  sim->add_option("--targets", targets, "comma-separated target states")->required();
  sim->add_option("--walks", walks, "number of walks");
  sim->add_option("--cap", cap, "censoring step cap");
  sim->add_option("--seed", seed, "seed");
  sim->add_option("--threads", c.threads, "worker threads; output does not depend on it");
  sim->callback([&] {
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_simulate_return(s, start.c_str(), targets.c_str(), walks, cap, seed, f, out);
    });
  });

  std::uint64_t walk_steps = 200;
  auto* audit = chain->add_subcommand("block-audit", "Zold walks never drop to a lower block");
  add_common(audit, c);
  audit->add_option("--walks", walks, "number of walks");
  audit->add_option("--steps", walk_steps, "steps per walk");
  audit->add_option("--seed", seed, "seed");
  audit->add_option("--threads", c.threads, "worker threads; output does not depend on it");
  audit->callback([&] {
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_block_audit(s, walks, walk_steps, seed, f, out);
    });
  });

  std::string ns = "1,2,3,4,5,6";
  auto* ep = chain->add_subcommand("extransi-params", "certified P(n), S_n and h_n");
  add_common(ep, c, false);
  ep->add_option("--n", ns, "comma-separated n values");
  ep->callback([&] {
    const pwm_output fmt = output_of(c);
    char* out = nullptr;
    const pwm_status st = pwm_extransi_params(ns.c_str(), &fmt, &out);
    rc = finish(st, out);
  });

  std::uint64_t start_block = 1;
  auto* ew = chain->add_subcommand("extransi-walk", "block-level walk of the Extransi chain");
  add_common(ew, c, false);
  ew->add_option("--walks", walks, "number of walks");
  ew->add_option("--steps", walk_steps, "steps per walk");
  ew->add_option("--seed", seed, "seed");
  ew->add_option("--start-block", start_block, "first block");
  ew->add_option("--threads", c.threads, "worker threads; output does not depend on it");
  ew->callback([&] {
    const pwm_output fmt = output_of(c);
    char* out = nullptr;
    const pwm_status st = pwm_extransi_walk(walks, walk_steps, seed, start_block, &fmt, &out);
    rc = finish(st, out);
  });

  std::string from = "1", to = "1000";
  auto* val = app.add_subcommand("validate", "check branch and Markov invariants over an index window");
  add_common(val, c);
  val->add_option("--from", from, "first index");
  val->add_option("--to", to, "last index");
  val->callback([&] {
    int ok = 1;
    rc = with_system(c, [&](pwm_system* s, const pwm_output* f, char** out) {
      return pwm_validate(s, from.c_str(), to.c_str(), f, out, &ok);
    });
    if (rc == 0 && !ok) rc = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << pwm_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  return rc;
}
