#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "lfl/vec.hpp"

namespace lfl {

// Counter-based random numbers (Philox4x32-10).
//
// Every draw is a pure function of (master_seed, chain_index, block, lane):
// there is no hidden generator state, so chains can be evaluated in any
// order, on any number of worker threads, or re-evaluated piecemeal, and the
// bits never change.  Samplers address blocks structurally as
// (step << 32) | slot, which keeps the noise consumed by one purpose (drift,
// auxiliary uniforms, oracle smoothing) independent of whether another
// purpose consumed anything.  That is what makes the degenerate-parameter
// identities (p = 1, eta = 0, exact oracle) bitwise instead of merely
// distributional.

struct Philox4x32 {
  std::array<std::uint32_t, 4> counter;
  std::array<std::uint32_t, 2> key;
};

// One application of the 10-round Philox4x32 bijection.  Verified against
// the published known-answer vectors in the test suite.
std::array<std::uint32_t, 4> philox4x32_10(const Philox4x32& in);

// Logical block addressing used by the samplers.
namespace rng_block {

// Per-step slots.  Slot 0 is the Brownian drift noise, slot 1 packs the
// small uniform draws (variance-reduction Bernoulli + component index), and
// slots 2, 3, ... carry one smoothing/oracle vector each.
inline constexpr std::uint64_t kDrift = 0;
inline constexpr std::uint64_t kAux = 1;
inline constexpr std::uint64_t kOracleBase = 2;

// Pseudo-step window for per-chain setup draws (initial position, averaged
// draw time).  Real steps are capped far below this.
inline constexpr std::uint64_t kSetupStep = 0xffffffffull;

inline constexpr std::uint64_t make(std::uint64_t step, std::uint64_t slot) {
  return (step << 32) | slot;
}

}  // namespace rng_block

// A stream of standard normal vectors identified by (master_seed,
// chain_index, counter).  `counter` selects the logical block of the next
// draw; gaussian_draw advances it by exactly one block.  Callers that want
// structured addressing (the samplers) set `counter` explicitly before
// drawing.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint32_t chain_index = 0;
  std::uint64_t counter = 0;
};

// Fill `out` with iid N(0,1) variates from the given logical block.
// Consumes lanes 0 .. ceil(d/2)-1 of the block; the block index itself does
// not change, so the same (seed, chain, block) always yields the same
// vector regardless of d-grouping elsewhere.
void gaussian_block(std::uint64_t master_seed, std::uint32_t chain_index,
                    std::uint64_t block, std::span<double> out);

// Uniform variate in [0,1) at position `index` within a block (two per
// Philox call).
double uniform_block(std::uint64_t master_seed, std::uint32_t chain_index,
                     std::uint64_t block, std::uint32_t index);

// Draw a d-vector of iid standard normals and advance the stream counter by
// one block.
inline Point gaussian_draw(RngStream& stream, std::size_t d) {
  Point out(d);
  gaussian_block(stream.master_seed, stream.chain_index, stream.counter,
                 std::span<double>(out));
  ++stream.counter;
  return out;
}

inline void gaussian_draw(RngStream& stream, std::span<double> out) {
  gaussian_block(stream.master_seed, stream.chain_index, stream.counter, out);
  ++stream.counter;
}

}  // namespace lfl
