#pragma once

#include "isobary/bounds.hpp"
#include "isobary/halfspace_solver.hpp"
#include "isobary/parallel.hpp"
#include "isobary/scan_report.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace isobary {

/// Closed integer interval of dimensions.
struct NRange {
  int lo = 1;
  int hi = 1;
};

struct ScanConfig {
  GridSpec grid = GridSpec::symmetric();
  int threads = default_thread_count();
};

/// diag_gap(t) < 0 at every (n, t). Metrics: max gap and min |gap| per n.
ScanReport scan_diag(NRange range, const ScanConfig& config = {});

/// factor * n * D(t) < 1, compared exactly. factor 1 is assertive ("derived"),
/// factor 2 report-only ("conjecture"). Metric: sup of factor * n * D per n.
ScanReport scan_derived(NRange range, int factor, const ScanConfig& config = {});

using RegionParamsForN = std::function<RegionParams(int n)>;

/// Exact D(t) < h_i at every grid point whose region is in `regions`.
/// Throws DomainError when a used bound is inapplicable at some n.
ScanReport scan_lemma_regions(NRange range, const RegionParamsForN& params,
                              const std::vector<Region>& regions, const ScanConfig& config = {});

/// D(t) < 3/(2n - 15), exactly, for n >= 12.
ScanReport scan_combined(NRange range, const ScanConfig& config = {});

/// The four large-n conditions used for the reduced cube argument:
///   0: h1(2 - 1/n, n) < 1/n      1: h3(sqrt 3, n) < 1/n
///   2: 3/(1 + 64/n) > (4 + 2 sqrt 3)/3      3: h5(2/3, n) < 1/n
struct N0Result {
  int n0 = 0;                      // all four hold for every n in [n0, horizon]
  std::array<int, 4> first_hold{};  // per condition, same meaning
  int horizon = 0;
  ScanReport report{"n0", false};
};

inline constexpr std::array<const char*, 4> kN0ConditionNames = {"h1", "h3", "volume", "h5"};

N0Result find_n0(int horizon = 10000);

/// Exact identities and float envelopes on the grid. One report each:
/// closed_form_n1, one_minus, log_derivative, small_exact, concavity,
/// monotone_tail_mean, mgf, envelope_small_exact, envelope_chernoff,
/// envelope_variance, envelope_half, envelope_concave_mean,
/// envelope_concave_derived.
std::vector<ScanReport> scan_identities(NRange range, const ScanConfig& config = {});

/// Float tolerance for envelope and concavity checks.
inline constexpr double kFloatMargin = 1e-12;

struct HpConfig {
  std::vector<int> dims = {2, 3, 4};
  std::vector<double> coords = {-0.9, -0.6, -0.3, 0.3, 0.6, 0.9};
  SolveOptions solver;
  int threads = default_thread_count();
};

/// Solves every grid point x in coords^n and checks vol(K_x) against the
/// point bounds. Reports: hp (assertive), greentree_point (assertive),
/// hp_ratio_monotone (report-only), greentree_ratio (assertive: the corner
/// simplex ratio n/(n!)^(1/n) increases and stays below e for n <= 50).
/// Non-converged points are listed as skipped and noted.
std::vector<ScanReport> scan_hp(const HpConfig& config = {});

/// For n = 1..n_max-1 and grid t: p^(1/n) and m nondecreasing in n
/// (report-only) and the peakedness direction of p (assertive).
/// n_max <= kMaxExactN.
std::vector<ScanReport> scan_monotone_in_n(int n_max, const ScanConfig& config = {});

/// Random halfspaces (n in 2..8): each MC component within 3 standard errors
/// of the exact value. Passes with at most 2 misses in 50.
ScanReport scan_mc_check(int cases = 50, std::uint64_t samples = 1000000,
                         std::uint64_t seed = 20240501, int threads = default_thread_count());

}  // namespace isobary
