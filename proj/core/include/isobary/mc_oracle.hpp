#pragma once

#include "isobary/cube_slice.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace isobary {

/// Philox4x32-10 counter-based generator (Salmon et al.); output depends
/// only on (counter, key), so streams can be split by sample index.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Uniform double in [0, 1) with 53 random bits from two 32-bit words.
double philox_uniform53(std::uint32_t hi, std::uint32_t lo);

/// Deterministic stream of uniforms in [-1, 1)^n for sample `index` of a
/// run seeded by `seed`. Independent of threading.
void cube_sample(std::uint64_t seed, std::uint64_t index, std::span<double> out);

inline constexpr std::uint64_t kMinMcSamples = 10000;
/// Samples are split into blocks of this size and merged in block order.
inline constexpr std::uint64_t kMcBlockSize = 1U << 16;

/// Estimates with standard errors. The barycenter is the sample mean over
/// accepted points; its standard error uses the accepted count.
struct McEstimate {
  double volume_fraction = 0;
  double volume_std_error = 0;
  std::vector<double> barycenter;
  std::vector<double> barycenter_std_error;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo volume fraction and barycenter of {u in [-1,1]^n : inside(u)}.
/// Requires samples >= kMinMcSamples. Bit-identical for any thread count.
McEstimate estimate_region(int n, const std::function<bool(std::span<const double>)>& inside,
                           std::uint64_t samples, std::uint64_t seed, int threads = 1);

/// Same for a halfspace slice of the cube.
McEstimate estimate_slice(const Halfspace& h, std::uint64_t samples, std::uint64_t seed,
                          int threads = 1);

}  // namespace isobary
