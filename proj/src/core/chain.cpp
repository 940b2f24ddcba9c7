#include "pwmarkov/chain.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "pwmarkov/errors.hpp"
#include "pwmarkov/random.hpp"

namespace pwm {

namespace {

// Runs fn(w) for w in [0, count) on up to `threads` threads; fn writes only to slot w.
template <class Fn>
void for_each_walk(std::uint64_t count, unsigned threads, Fn fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    for (std::uint64_t w = 0; w < count; ++w) fn(w);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = t * chunk;
    const std::uint64_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, t, lo, hi] {
      try {
        for (std::uint64_t w = lo; w < hi; ++w) fn(w);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

BigInt step_from(const TransitionRow& row, StreamRng& rng) {
  return row.first + uniform_below(rng, row.size());
}

}  // namespace

TransitionRow transition_row(const System& system, const BigInt& state) {
  const BranchSpec b = branch_of(system, state);
  return {state, b.first_target(), b.last_target(), Rational(BigInt(1), b.count())};
}

WalkStats simulate_return(const System& system, const WalkOptions& options) {
  if (options.cap < 1) throw DomainError("cap must be at least 1");
  if (options.targets.empty()) throw DomainError("target set is empty");
  std::vector<BigInt> targets = options.targets;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  (void)branch_of(system, options.start);

  struct Result {
    std::uint64_t time = 0;  // 0 = censored
    BigInt max_state;
  };
  std::vector<Result> results(options.walks);
  for_each_walk(options.walks, options.threads, [&](std::uint64_t w) {
    StreamRng rng(options.seed, w);
    BigInt state = options.start;
    Result& r = results[w];
    r.max_state = state;
    for (std::uint64_t t = 1; t <= options.cap; ++t) {
      const TransitionRow row = transition_row(system, state);
      state = step_from(row, rng);
      if (state > r.max_state) r.max_state = state;
      if (std::binary_search(targets.begin(), targets.end(), state)) {
        r.time = t;
        break;
      }
    }
  });

  WalkStats stats;
  stats.start = options.start;
  stats.targets = targets;
  stats.walks = options.walks;
  stats.seed = options.seed;
  stats.cap = options.cap;
  stats.max_state = options.start;
  BigInt total = 0;
  for (const auto& r : results) {
    if (r.max_state > stats.max_state) stats.max_state = r.max_state;
    if (r.time == 0) {
      ++stats.censored;
      continue;
    }
    ++stats.returned;
    ++stats.histogram[r.time];
    total += static_cast<unsigned long>(r.time);
  }
  if (stats.returned > 0) {
    stats.mean = Rational(total, BigInt(static_cast<unsigned long>(stats.returned)));
  }
  return stats;
}

BlockEscapeReport block_escape_audit(const Zold& system, std::uint64_t walks, std::uint64_t steps,
                                     std::uint64_t seed, unsigned threads) {
  const std::uint64_t stride = std::max<std::uint64_t>(1, steps / 10);
  std::vector<std::uint64_t> marks;
  for (std::uint64_t s = 0; s < steps; s += stride) marks.push_back(s);
  marks.push_back(steps);

  struct Result {
    std::uint64_t violations = 0;
    std::uint64_t support_checks = 0;
    std::vector<std::string> findings;
    std::vector<BigInt> at_marks;
  };
  std::vector<Result> results(walks);
  for_each_walk(walks, threads, [&](std::uint64_t w) {
    StreamRng rng(seed, w);
    Result& r = results[w];
    BigInt state = 1;
    BigInt block = system.block_of(state);
    std::size_t next_mark = 0;
    for (std::uint64_t t = 0;; ++t) {
      if (next_mark < marks.size() && marks[next_mark] == t) {
        r.at_marks.push_back(block);
        ++next_mark;
      }
      if (t == steps) break;
      const TransitionRow row = transition_row(system, state);
      ++r.support_checks;
      if (row.first <= system.block_start(block)) {
        ++r.violations;
        if (r.findings.size() < 3) {
          r.findings.push_back("walk " + std::to_string(w) + ": row of state " + to_string(state) +
                               " reaches " + to_string(row.first) + " <= s_" + to_string(block));
        }
      }
      state = step_from(row, rng);
      const BigInt next_block = system.block_of(state);
      if (next_block < block) {
        ++r.violations;
        if (r.findings.size() < 3) {
          r.findings.push_back("walk " + std::to_string(w) + " step " + std::to_string(t + 1) +
                               ": block " + to_string(block) + " -> " + to_string(next_block));
        }
      }
      block = next_block;
    }
  });

  BlockEscapeReport report;
  report.walks = walks;
  report.steps = steps;
  report.seed = seed;
  std::vector<BigInt> sums(marks.size(), BigInt(0));
  for (const auto& r : results) {
    report.violations += r.violations;
    report.support_checks += r.support_checks;
    for (const auto& f : r.findings) {
      if (report.findings.size() < 20) report.findings.push_back(f);
    }
    for (std::size_t i = 0; i < r.at_marks.size(); ++i) sums[i] += r.at_marks[i];
    ++report.final_blocks[r.at_marks.back()];
  }
  for (std::size_t i = 0; i < marks.size(); ++i) {
    Rational mean = walks ? Rational(sums[i], BigInt(static_cast<unsigned long>(walks))) : Rational(0);
    if (i > 0 && mean < report.drift.back().mean_block) report.drift_nondecreasing = false;
    report.drift.push_back({marks[i], std::move(mean)});
  }
  return report;
}

ExtransiParams extransi_params(const Extransi& system, unsigned long n) {
  if (n < 1) throw DomainError("Extransi parameters need n >= 1");
  ExtransiParams out;
  out.enclosure = enclose_extransi_ratio(n);
  out.p = system.ratio_ceiling(n);
  if (out.p != out.enclosure.ratio_ceiling) throw PrecisionError("cached P(n) disagrees with the enclosure");
  out.s = system.s(n);
  out.h = system.h(n);
  out.up_probability = Rational(out.h - out.s, out.h);
  out.up_given_leave = Rational(out.p, out.p + 1);
  out.up_given_leave_certified = out.up_given_leave >= out.enclosure.p_upper;
  return out;
}

ExtransiWalkReport extransi_block_walk(const Extransi& system, std::uint64_t walks,
                                       std::uint64_t steps, std::uint64_t seed,
                                       unsigned long start_block, unsigned threads) {
  if (start_block < 1) throw DomainError("Extransi blocks start at 1");
  struct Result {
    unsigned long final_block = 0;
    unsigned long max_block = 0;
    std::uint64_t up = 0;
  };
  std::vector<Result> results(walks);
  for_each_walk(walks, threads, [&](std::uint64_t w) {
    StreamRng rng(seed, w);
    Result& r = results[w];
    unsigned long block = start_block;
    r.max_block = block;
    for (std::uint64_t t = 0; t < steps; ++t) {
      const BigInt h = system.h(block);
      const BigInt s = system.s(block);
      const BigInt target = uniform_below(rng, h) + 1;
      const unsigned long next =
          target <= s ? static_cast<unsigned long>(system.block_of(target)) : block + 1;
      if (next > block) ++r.up;
      block = next;
      r.max_block = std::max(r.max_block, block);
    }
    r.final_block = block;
  });
  ExtransiWalkReport report;
  report.walks = walks;
  report.steps = steps;
  report.seed = seed;
  report.start_block = start_block;
  for (const auto& r : results) {
    ++report.final_blocks[r.final_block];
    ++report.max_blocks[r.max_block];
    report.up_moves += r.up;
  }
  report.moves_from_block = walks * steps;
  return report;
}

}  // namespace pwm
