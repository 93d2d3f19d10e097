#include "isobary/mc_oracle.hpp"

#include "isobary/errors.hpp"
#include "isobary/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isobary {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

struct Block {
  std::uint64_t hits = 0;
  std::vector<long double> sum;
  std::vector<long double> sum_sq;
};

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0;
    std::uint32_t lo0;
    std::uint32_t hi1;
    std::uint32_t lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

double philox_uniform53(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi >> 5) << 26) | (lo >> 6);
  return std::ldexp(static_cast<double>(bits), -53);
}

void cube_sample(std::uint64_t seed, std::uint64_t index, std::span<double> out) {
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed),
                                         static_cast<std::uint32_t>(seed >> 32)};
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const auto w = philox4x32({static_cast<std::uint32_t>(index),
                               static_cast<std::uint32_t>(index >> 32),
                               static_cast<std::uint32_t>(i / 2), 0},
                              key);
    out[i] = 2 * philox_uniform53(w[0], w[1]) - 1;
    if (i + 1 < out.size()) out[i + 1] = 2 * philox_uniform53(w[2], w[3]) - 1;
  }
}

McEstimate estimate_region(int n, const std::function<bool(std::span<const double>)>& inside,
                           std::uint64_t samples, std::uint64_t seed, int threads) {
  if (n < 1) {
    throw DomainError("dimension must be >= 1");
  }
  if (samples < kMinMcSamples) {
    throw DomainError("Monte Carlo needs at least " + std::to_string(kMinMcSamples) +
                      " samples");
  }
  const auto dim = static_cast<std::size_t>(n);
  const std::uint64_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<Block> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    Block& out = partial[b];
    out.sum.assign(dim, 0);
    out.sum_sq.assign(dim, 0);
    std::vector<double> u(dim);
    const std::uint64_t begin = b * kMcBlockSize;
    const std::uint64_t end = std::min(samples, begin + kMcBlockSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      cube_sample(seed, i, u);
      if (!inside(u)) continue;
      ++out.hits;
      for (std::size_t j = 0; j < dim; ++j) {
        out.sum[j] += u[j];
        out.sum_sq[j] += static_cast<long double>(u[j]) * u[j];
      }
    }
  });

  Block total;
  total.sum.assign(dim, 0);
  total.sum_sq.assign(dim, 0);
  for (const auto& b : partial) {
    total.hits += b.hits;
    for (std::size_t j = 0; j < dim; ++j) {
      total.sum[j] += b.sum[j];
      total.sum_sq[j] += b.sum_sq[j];
    }
  }

  McEstimate est;
  est.samples = samples;
  est.hits = total.hits;
  est.seed = seed;
  const auto N = static_cast<long double>(samples);
  const auto H = static_cast<long double>(total.hits);
  const long double p = H / N;
  est.volume_fraction = static_cast<double>(p);
  est.volume_std_error = static_cast<double>(std::sqrt(p * (1 - p) * N / (N - 1) / N));
  est.barycenter.assign(dim, std::nan(""));
  est.barycenter_std_error.assign(dim, std::nan(""));
  if (total.hits >= 2) {
    for (std::size_t j = 0; j < dim; ++j) {
      const long double mean = total.sum[j] / H;
      const long double var = std::max(0.0L, (total.sum_sq[j] - H * mean * mean) / (H - 1));
      est.barycenter[j] = static_cast<double>(mean);
      est.barycenter_std_error[j] = static_cast<double>(std::sqrt(var / H));
    }
  }
  return est;
}

McEstimate estimate_slice(const Halfspace& h, std::uint64_t samples, std::uint64_t seed,
                          int threads) {
  const auto& dir = h.direction;
  const long double c = h.offset;
  return estimate_region(
      h.dimension(),
      [&](std::span<const double> u) {
        long double s = 0;
        for (std::size_t i = 0; i < u.size(); ++i) s += static_cast<long double>(dir[i]) * u[i];
        return s >= c;
      },
      samples, seed, threads);
}

}  // namespace isobary
