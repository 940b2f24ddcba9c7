#include <algorithm>
#include <cctype>
#include <cmath>

#include "pwmarkov/errors.hpp"
#include "pwmarkov/extransi.hpp"
#include "pwmarkov/system.hpp"

namespace pwm {

namespace {

void require_positive_index(const System& system, const BigInt& n) {
  if (n < 1) {
    throw DomainError("branch index " + to_string(n) + " is outside the domain of " + system.name());
  }
}

BigInt isqrt(const BigInt& v) {
  BigInt out;
  mpz_sqrt(out.get_mpz_t(), v.get_mpz_t());
  return out;
}

}  // namespace

// ---- T ----------------------------------------------------------------------

Rational SchweitzerT::value_at_integer(const BigInt& k) const {
  if (k < 0) throw DomainError("T is defined on [0, inf), got " + to_string(k));
  if (mpz_even_p(k.get_mpz_t())) return Rational(0);
  return Rational(pow4(ell(Rational(k))) + 1);
}

BranchSpec SchweitzerT::branch(const BigInt& n) const {
  require_positive_index(*this, n);
  const bool odd = mpz_odd_p(n.get_mpz_t()) != 0;
  const BigInt odd_end = odd ? n : BigInt(n - 1);
  const BigInt top = pow4(ell(Rational(odd_end))) + 1;
  if (odd) return BranchSpec::affine(n, top, BigInt(0));
  return BranchSpec::affine(n, BigInt(-top), top);
}

BigInt SchweitzerT::run_end(const BigInt& n, const BigInt& cap) const {
  // ell is constant on (4^{l-1}, 4^l], and so is the image [0, 4^l + 1].
  const BigInt end = pow4(ell(Rational(n)));
  return std::min(end, std::max(cap, n));
}

// ---- Kek --------------------------------------------------------------------

BranchSpec Kek::branch(const BigInt& n) const {
  require_positive_index(*this, n);
  if (n <= 3) return BranchSpec::affine(n, BigInt(4), BigInt(0));
  // 4x - 3(n-1) - 2 at x = n-1
  return BranchSpec::affine(n, BigInt(4), BigInt(n - 3));
}

BigInt Kek::run_end(const BigInt& n, const BigInt& cap) const {
  if (n <= 3) return std::min(BigInt(3), std::max(cap, n));
  return n;
}

// ---- PosrecEscapes ------------------------------------------------------------

void PosrecEscapes::extend_past(const BigInt& n) const {
  // Keep S_{k+1} available for the first special index beyond n.
  while (s_[s_.size() - 2] / 2 + 1 <= n) s_.push_back(4 * s_.back() + 1);
}

BigInt PosrecEscapes::s(std::size_t k) const {
  std::lock_guard lock(mutex_);
  while (s_.size() <= k) s_.push_back(4 * s_.back() + 1);
  return s_[k];
}

BigInt PosrecEscapes::slope_at(const BigInt& n) const {
  std::lock_guard lock(mutex_);
  extend_past(n);
  // Special indices floor(S_k/2)+1 are strictly increasing in k.
  for (std::size_t k = 0; k + 1 < s_.size(); ++k) {
    const BigInt special = s_[k] / 2 + 1;
    if (special == n) return s_[k + 1];
    if (special > n) break;
  }
  return BigInt(3);
}

BranchSpec PosrecEscapes::branch(const BigInt& n) const {
  require_positive_index(*this, n);
  return BranchSpec::affine(n, slope_at(n), BigInt(0));
}

BigInt PosrecEscapes::run_end(const BigInt& n, const BigInt& cap) const {
  const BigInt limit = std::max(cap, n);
  if (slope_at(n) != 3) return n;
  std::lock_guard lock(mutex_);
  extend_past(n);
  for (std::size_t k = 0; k + 1 < s_.size(); ++k) {
    const BigInt special = s_[k] / 2 + 1;
    if (special > n && s_[k + 1] != 3) return std::min(BigInt(special - 1), limit);
  }
  return limit;
}

// ---- Zold ---------------------------------------------------------------------

Zold::Zold(ZoldParams params) : params_(std::move(params)) {
  prefix_sums_.push_back(BigInt(0));  // s_1
  for (const auto& n_k : params_.prefix) {
    if (n_k < 1) throw SpecError("Zold block sizes n_k must be positive");
    prefix_sums_.push_back(prefix_sums_.back() + n_k);
  }
}

BigInt Zold::block_size(const BigInt& k) const {
  if (k < 1) throw DomainError("Zold blocks are numbered from 1");
  if (k <= params_.prefix.size()) return params_.prefix[k.get_ui() - 1];
  return k;
}

BigInt Zold::block_start(const BigInt& k) const {
  if (k < 1) throw DomainError("Zold blocks are numbered from 1");
  const BigInt big_k(static_cast<unsigned long>(params_.prefix.size()));
  if (k <= big_k + 1) return prefix_sums_[k.get_ui() - 1];
  // s_k = s_{K+1} + sum_{i=K+1}^{k-1} i
  return prefix_sums_.back() + ((k - 1) * k - big_k * (big_k + 1)) / 2;
}

BigInt Zold::block_of(const BigInt& n) const {
  if (n < 1) throw DomainError("Zold states start at 1");
  if (n <= prefix_sums_.back()) {
    // first s_{k+1} >= n
    const auto it = std::lower_bound(prefix_sums_.begin(), prefix_sums_.end(), n);
    return BigInt(static_cast<unsigned long>(it - prefix_sums_.begin()));
  }
  const BigInt big_k(static_cast<unsigned long>(params_.prefix.size()));
  // For k > K: s_k = c + (k-1)k/2 with c = s_{K+1} - K(K+1)/2.
  const BigInt c = prefix_sums_.back() - big_k * (big_k + 1) / 2;
  const BigInt rel = n - c;
  if (rel.fits_ulong_p() && rel < (1UL << 40) && big_k < (1UL << 20)) {
    const unsigned long r = rel.get_ui();
    const unsigned long lo = big_k.get_ui() + 1;
    unsigned long k = static_cast<unsigned long>(std::sqrt(2.0 * static_cast<double>(r))) + 1;
    if (k < lo) k = lo;
    auto start = [](unsigned long j) { return (j - 1) * j / 2; };  // s_j - c
    while (k > lo && start(k) >= r) --k;
    while (start(k + 1) < r) ++k;
    return BigInt(k);
  }
  BigInt k = isqrt(2 * (n - c)) + 1;
  if (k < big_k + 1) k = big_k + 1;
  while (block_start(k) >= n) --k;
  while (block_start(k + 1) < n) ++k;
  return k;
}

BranchSpec Zold::branch(const BigInt& n) const {
  require_positive_index(*this, n);
  const BigInt k = block_of(n);
  const BigInt slope = block_size(k) + 1;
  const BigInt s_k = block_start(k);
  if (params_.literal) return BranchSpec::affine(n, slope, slope * (n - 1) + s_k);
  return BranchSpec::affine(n, slope, s_k);
}

BigInt Zold::run_end(const BigInt& n, const BigInt& cap) const {
  if (params_.literal) return n;
  const BigInt end = block_start(block_of(n) + 1);
  return std::min(end, std::max(cap, n));
}

// ---- Extransi -------------------------------------------------------------------

void Extransi::extend_to(std::size_t n) const {
  while (s_.size() <= n) {
    const std::size_t m = s_.size();
    const BigInt p = enclose_extransi_ratio(m).ratio_ceiling;
    p_.push_back(p);
    if (m == 1) {
      s_.push_back(BigInt(1));
      h_.push_back(BigInt(2));
    } else {
      const BigInt prev = s_.back();
      s_.push_back(BigInt(static_cast<unsigned long>(m - 1)) * p * prev);
      h_.push_back(BigInt(static_cast<unsigned long>(m)) * p * prev);
    }
  }
}

void Extransi::extend_past(const BigInt& j) const {
  extend_to(1);
  while (s_.back() < j) extend_to(s_.size());
}

BigInt Extransi::ratio_ceiling(std::size_t n) const {
  if (n < 1) throw DomainError("P(n) needs n >= 1");
  std::lock_guard lock(mutex_);
  extend_to(n);
  return p_[n];
}

BigInt Extransi::s(std::size_t n) const {
  std::lock_guard lock(mutex_);
  extend_to(n);
  return s_[n];
}

BigInt Extransi::h(std::size_t n) const {
  if (n < 1) throw DomainError("h_n needs n >= 1");
  std::lock_guard lock(mutex_);
  extend_to(n);
  return h_[n];
}

std::size_t Extransi::block_of(const BigInt& j) const {
  if (j < 1) throw DomainError("Extransi states start at 1");
  std::lock_guard lock(mutex_);
  extend_past(j);
  const auto it = std::lower_bound(s_.begin() + 1, s_.end(), j);
  return static_cast<std::size_t>(it - s_.begin());
}

BranchSpec Extransi::branch(const BigInt& j) const {
  require_positive_index(*this, j);
  return BranchSpec::affine(j, h(block_of(j)), BigInt(0));
}

BigInt Extransi::run_end(const BigInt& j, const BigInt& cap) const {
  const BigInt end = s(block_of(j));
  return std::min(end, std::max(cap, j));
}

// ---- factory ----------------------------------------------------------------------

SystemPtr make_builtin(std::string_view name, const ZoldParams& zold) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "t" || key == "schweitzert") return std::make_shared<SchweitzerT>();
  if (key == "kek") return std::make_shared<Kek>();
  if (key == "posrecescapes") return std::make_shared<PosrecEscapes>();
  if (key == "zold") return std::make_shared<Zold>(zold);
  if (key == "extransi") return std::make_shared<Extransi>();
  throw SpecError("unknown builtin system '" + std::string(name) +
                  "' (expected T, Kek, PosrecEscapes, Zold or Extransi)");
}

}  // namespace pwm
