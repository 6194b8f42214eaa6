#include "lfl/rng.hpp"

#include <cmath>

namespace lfl {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

// Map 64 random bits to a uniform in [0,1) (53-bit mantissa) and to (0,1]
// for the log argument of Box-Muller.
inline double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

inline double to_unit_positive(std::uint64_t x) {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

inline std::array<std::uint32_t, 4> block_bits(std::uint64_t seed,
                                               std::uint32_t chain,
                                               std::uint64_t block,
                                               std::uint32_t lane) {
  Philox4x32 s;
  s.counter = {lane, static_cast<std::uint32_t>(block),
               static_cast<std::uint32_t>(block >> 32), chain};
  s.key = {static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)};
  return philox4x32_10(s);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(const Philox4x32& in) {
  std::array<std::uint32_t, 4> c = in.counter;
  std::array<std::uint32_t, 2> k = in.key;
  for (int r = 0; r < 10; ++r) {
    c = round_once(c, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

void gaussian_block(std::uint64_t master_seed, std::uint32_t chain_index,
                    std::uint64_t block, std::span<double> out) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const std::size_t d = out.size();
  for (std::size_t pair = 0; 2 * pair < d; ++pair) {
    const auto w =
        block_bits(master_seed, chain_index, block, static_cast<std::uint32_t>(pair));
    const std::uint64_t a = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(w[2]) << 32) | w[3];
    const double r = std::sqrt(-2.0 * std::log(to_unit_positive(a)));
    const double theta = kTwoPi * to_unit(b);
    out[2 * pair] = r * std::cos(theta);
    if (2 * pair + 1 < d) out[2 * pair + 1] = r * std::sin(theta);
  }
}

double uniform_block(std::uint64_t master_seed, std::uint32_t chain_index,
                     std::uint64_t block, std::uint32_t index) {
  const auto w = block_bits(master_seed, chain_index, block, index >> 1);
  const std::uint64_t hi = (index & 1u)
                               ? (static_cast<std::uint64_t>(w[2]) << 32) | w[3]
                               : (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
  return to_unit(hi);
}

}  // namespace lfl
