#include "pwmarkov/random.hpp"

#include <vector>

#include "pwmarkov/errors.hpp"

namespace pwm {

std::uint64_t uniform_below(StreamRng& rng, std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_below needs n >= 1");
  // Reject the top partial copy of [0, n) so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t v = rng();
    if (v >= threshold) return v % n;
  }
}

BigInt uniform_below(StreamRng& rng, const BigInt& n) {
  if (n < 1) throw DomainError("uniform_below needs n >= 1");
  if (n.fits_ulong_p()) return BigInt(static_cast<unsigned long>(uniform_below(rng, std::uint64_t{n.get_ui()})));
  const std::size_t bits = bit_length(n - 1);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (;;) {
    for (auto& w : buf) w = rng();
    if (bits % 64) buf.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
    BigInt v;
    mpz_import(v.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (v < n) return v;
  }
}

}  // namespace pwm
