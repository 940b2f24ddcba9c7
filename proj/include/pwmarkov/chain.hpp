#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pwmarkov/extransi.hpp"
#include "pwmarkov/system.hpp"

namespace pwm {

/// Uniform row of the associated chain: every state in [first, last] gets 1/m.
struct TransitionRow {
  BigInt state;
  BigInt first;
  BigInt last;
  Rational probability;

  BigInt size() const { return last - first + 1; }
};

TransitionRow transition_row(const System& system, const BigInt& state);

struct WalkOptions {
  BigInt start;
  std::vector<BigInt> targets;
  std::uint64_t walks = 0;
  std::uint64_t cap = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct WalkStats {
  BigInt start;
  std::vector<BigInt> targets;
  std::uint64_t walks = 0;
  std::uint64_t seed = 0;
  std::uint64_t cap = 0;
  std::uint64_t returned = 0;
  std::uint64_t censored = 0;
  std::optional<Rational> mean;  // over uncensored walks
  std::map<std::uint64_t, std::uint64_t> histogram;  // hitting time -> walks
  BigInt max_state;
};

/// First hitting time of `targets`, counted from the first step (t >= 1).
/// Walk w draws from stream (seed, w), so the result does not depend on `threads`.
WalkStats simulate_return(const System& system, const WalkOptions& options);

struct BlockCheckpoint {
  std::uint64_t step = 0;
  Rational mean_block;
};

struct BlockEscapeReport {
  std::uint64_t walks = 0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> findings;
  std::uint64_t support_checks = 0;  // rows checked exactly
  std::map<BigInt, std::uint64_t> final_blocks;  // block -> walks
  std::vector<BlockCheckpoint> drift;
  bool drift_nondecreasing = true;
};

/// Zold walks from state 1; the block index may never decrease. Also checks
/// exactly that no row from block k reaches a state <= s_k, for every block
/// met on a walk.
BlockEscapeReport block_escape_audit(const Zold& system, std::uint64_t walks, std::uint64_t steps,
                                     std::uint64_t seed, unsigned threads = 1);

struct ExtransiParams {
  RatioEnclosure enclosure;
  BigInt p;  // P(n)
  BigInt s;  // S_n
  BigInt h;  // h_n
  Rational up_probability;          // (h_n - S_n) / h_n
  Rational up_given_leave;          // P / (P + 1)
  bool up_given_leave_certified = false;  // P/(P+1) >= upper enclosure of p(n)
};

ExtransiParams extransi_params(const Extransi& system, unsigned long n);

struct ExtransiWalkReport {
  std::uint64_t walks = 0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  unsigned long start_block = 1;
  std::map<unsigned long, std::uint64_t> final_blocks;
  std::map<unsigned long, std::uint64_t> max_blocks;
  std::uint64_t up_moves = 0;
  std::uint64_t moves_from_block = 0;  // steps taken, for the empirical up rate
};

/// Block-level walk of the constructed chain: from block n the next block is
/// m <= n with probability (S_m - S_{m-1})/h_n and n+1 with (h_n - S_n)/h_n.
ExtransiWalkReport extransi_block_walk(const Extransi& system, std::uint64_t walks,
                                       std::uint64_t steps, std::uint64_t seed,
                                       unsigned long start_block = 1, unsigned threads = 1);

}  // namespace pwm
