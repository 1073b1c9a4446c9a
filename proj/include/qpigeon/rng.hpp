#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

// Counter-based random source for the Monte Carlo oracle. Sample i is a pure
// function of (seed, i): word k of the run is the SplitMix64 output of state
// seed + (k+1)*GAMMA, and sample i consumes words 6i..6i+5. Any partition of
// the sample index range therefore draws exactly the same points, which is
// what makes block-parallel integration independent of the partitioning.

namespace qpigeon {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Word k of the stream for `seed`.
std::uint64_t stream_word(std::uint64_t seed, std::uint64_t k);

/// Six standard normal variates for sample `index` (Box-Muller over three
/// uniform pairs drawn from the stream).
std::array<double, 6> standard_normal6(std::uint64_t seed, std::uint64_t index);

/// Fills coords[axis][0..count) with the coordinates of samples
/// [first, first+count), each axis scaled by `scale` (the per-axis standard
/// deviation of the proposal).
void fill_sample_block(std::uint64_t seed, std::uint64_t first, std::size_t count,
                       double scale, double* const coords[6]);

} // namespace qpigeon
