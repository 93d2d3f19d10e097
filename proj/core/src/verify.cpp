#include "isobary/verify.hpp"

#include "isobary/cube_slice.hpp"
#include "isobary/irwin_hall.hpp"
#include "isobary/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>

namespace isobary {

namespace {

void check_range(NRange r, int lo_cap, int hi_cap) {
  if (r.lo < lo_cap || r.hi > hi_cap || r.lo > r.hi) {
    throw DomainError("n range " + std::to_string(r.lo) + ".." + std::to_string(r.hi) +
                      " outside " + std::to_string(lo_cap) + ".." + std::to_string(hi_cap));
  }
}

std::vector<Rational> interior_points(const GridSpec& grid) {
  auto pts = grid.points();
  for (const auto& t : pts) {
    if (!(t > Rational(-1) && t < Rational(1))) {
      throw DomainError("grid must lie inside (-1, 1)");
    }
  }
  return pts;
}

std::string label(const Rational& t) { return format_double(t.to_double()); }

ScanRow make_row(int n, const Rational& t, double value, double bound, double margin, bool ok) {
  return ScanRow{n, label(t), value, bound, margin, ok};
}

// Evaluates f at every (n, t) in parallel; rows are added in (n, t) order.
template <class F>
void run_grid(ScanReport& rep, NRange r, const std::vector<Rational>& pts, int threads, F f) {
  const std::size_t per = pts.size();
  const std::size_t count = static_cast<std::size_t>(r.hi - r.lo + 1) * per;
  std::vector<std::vector<ScanRow>> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    const int n = r.lo + static_cast<int>(i / per);
    out[i] = f(n, pts[i % per]);
  });
  for (auto& rows : out) {
    for (auto& row : rows) rep.add(std::move(row));
  }
}

// Per-n extreme of key(row) over the report's rows, recorded as metrics.
template <class Key>
void per_n_metric(ScanReport& rep, const std::string& name, bool take_max, Key key) {
  std::map<int, std::pair<double, std::string>> best;
  for (const auto& row : rep.rows()) {
    const double v = key(row);
    auto it = best.find(row.n);
    if (it == best.end() || (take_max ? v > it->second.first : v < it->second.first)) {
      best[row.n] = {v, row.t};
    }
  }
  for (const auto& [n, vt] : best) rep.add_metric({name, n, vt.first, vt.second});
}

ScanReport grid_report(std::string name, bool assertive, NRange r, const ScanConfig& c) {
  ScanReport rep(std::move(name), assertive);
  rep.set_n_range(r.lo, r.hi);
  rep.set_grid(c.grid);
  return rep;
}

// Strict a < b with doubles; margin b - a.
ScanRow less_row(int n, const Rational& t, double value, double bound) {
  return make_row(n, t, value, bound, bound - value, value < bound);
}

// value <= bound up to kFloatMargin.
ScanRow envelope_row(int n, const Rational& t, double value, double bound) {
  const double margin = bound - value;
  return make_row(n, t, value, bound, margin, margin > -kFloatMargin);
}

ScanRow exact_eq_row(int n, const Rational& t, const Rational& lhs, const Rational& rhs) {
  const bool eq = lhs == rhs;
  return make_row(n, t, lhs.to_double(), rhs.to_double(),
                  eq ? 0.0 : -std::fabs((lhs - rhs).to_double()), eq);
}

}  // namespace

ScanReport scan_diag(NRange range, const ScanConfig& config) {
  check_range(range, 1, kMaxExactN);
  const auto pts = interior_points(config.grid);
  ScanReport rep = grid_report("diag", true, range, config);
  run_grid(rep, range, pts, config.threads, [](int n, const Rational& t) {
    const double gap = diag_gap(shared_irwin_hall(n), t);
    return std::vector<ScanRow>{make_row(n, t, gap, 0.0, -gap, gap < 0)};
  });
  per_n_metric(rep, "max_gap", true, [](const ScanRow& r) { return r.value; });
  per_n_metric(rep, "min_abs_gap", false, [](const ScanRow& r) { return std::fabs(r.value); });
  if (auto m = rep.min_abs_value()) {
    rep.add_metric({"min_abs_gap_overall", 0, *m, ""});
  }
  return rep;
}

ScanReport scan_derived(NRange range, int factor, const ScanConfig& config) {
  if (factor != 1 && factor != 2) {
    throw DomainError("factor must be 1 or 2");
  }
  check_range(range, 1, kMaxExactN);
  const auto pts = interior_points(config.grid);
  ScanReport rep = grid_report(factor == 1 ? "derived" : "conjecture", factor == 1, range, config);
  run_grid(rep, range, pts, config.threads, [factor](int n, const Rational& t) {
    const Rational scaled = Rational(factor * n) * derived_quantity(shared_irwin_hall(n), t);
    const double v = scaled.to_double();
    return std::vector<ScanRow>{make_row(n, t, v, 1.0, 1.0 - v, scaled < Rational(1))};
  });
  per_n_metric(rep, factor == 1 ? "sup_nD" : "sup_2nD", true,
               [](const ScanRow& r) { return r.value; });
  return rep;
}

ScanReport scan_lemma_regions(NRange range, const RegionParamsForN& params,
                              const std::vector<Region>& regions, const ScanConfig& config) {
  check_range(range, 1, kMaxExactN);
  const auto pts = interior_points(config.grid);
  // Bounds per (n, region) are evaluated up front so an inapplicable
  // parameter choice fails before any scanning.
  std::map<std::pair<int, int>, double> bound;
  for (int n = range.lo; n <= range.hi; ++n) {
    RegionParams p = params(n);
    p.n = n;
    for (Region r : regions) bound[{n, static_cast<int>(r)}] = lemma_bound(r, p);
  }
  ScanReport rep = grid_report("regions", true, range, config);
  run_grid(rep, range, pts, config.threads, [&](int n, const Rational& t) {
    RegionParams p = params(n);
    p.n = n;
    const Region r = region_of(t.to_double(), p);
    if (std::find(regions.begin(), regions.end(), r) == regions.end()) {
      return std::vector<ScanRow>{};
    }
    const double h = bound.at({n, static_cast<int>(r)});
    const double d = derived_quantity(shared_irwin_hall(n), t).to_double();
    return std::vector<ScanRow>{less_row(n, t, d, h)};
  });
  // Largest D/h per region.
  for (Region r : regions) {
    double worst = 0;
    std::string at;
    int worst_n = 0;
    for (const auto& row : rep.rows()) {
      RegionParams p = params(row.n);
      p.n = row.n;
      if (region_of(std::stod(row.t), p) != r) continue;
      const double ratio = row.value / row.bound;
      if (ratio > worst) {
        worst = ratio;
        at = row.t;
        worst_n = row.n;
      }
    }
    rep.add_metric({"max_D_over_h" + std::to_string(static_cast<int>(r)), worst_n, worst, at});
  }
  const RegionParams p0 = params(range.lo);
  if (std::find(regions.begin(), regions.end(), Region::k2) != regions.end()) {
    const double n = range.lo;
    if (std::fabs(p0.alpha - (2 - 1 / n)) < 1e-15) {
      rep.add_note("h2(2 - 1/n, n) = 1/n exactly at this alpha");
    }
  }
  return rep;
}

ScanReport scan_combined(NRange range, const ScanConfig& config) {
  check_range(range, 12, kMaxExactN);
  const auto pts = interior_points(config.grid);
  ScanReport rep = grid_report("combined", true, range, config);
  run_grid(rep, range, pts, config.threads, [](int n, const Rational& t) {
    const Rational d = derived_quantity(shared_irwin_hall(n), t);
    const Rational b = combined_bound_exact(n);
    const double dv = d.to_double();
    const double bv = b.to_double();
    return std::vector<ScanRow>{make_row(n, t, dv, bv, bv - dv, d < b)};
  });
  per_n_metric(rep, "max_D_over_bound", true, [](const ScanRow& r) { return r.value / r.bound; });
  return rep;
}

N0Result find_n0(int horizon) {
  if (horizon < 1) {
    throw DomainError("horizon must be >= 1");
  }
  N0Result out;
  out.horizon = horizon;
  out.report.set_n_range(1, horizon);
  out.report.set_grid_description("n = 1.." + std::to_string(horizon));
  const double rhs_volume = (4 + 2 * std::numbers::sqrt3) / 3;
  std::array<int, 4> last_fail{0, 0, 0, 0};
  for (int n = 1; n <= horizon; ++n) {
    RegionParams p;
    p.n = n;
    p.alpha = 2.0 - 1.0 / n;
    p.beta = std::numbers::sqrt3;
    p.gamma = 2.0 / 3.0;
    const double inv_n = 1.0 / n;
    std::array<double, 4> value{};
    std::array<double, 4> bound{inv_n, inv_n, 3.0 / (1 + 64.0 / n), inv_n};
    const std::array<Region, 4> region{Region::k1, Region::k3, Region::k1, Region::k5};
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == 2) {
        value[i] = rhs_volume;
        continue;
      }
      try {
        value[i] = lemma_bound(region[i], p);
      } catch (const DomainError&) {
        value[i] = std::numeric_limits<double>::infinity();
      }
    }
    for (std::size_t i = 0; i < 4; ++i) {
      const bool holds = value[i] < bound[i];
      if (!holds) last_fail[i] = n;
      out.report.add(ScanRow{n, kN0ConditionNames[i], value[i], bound[i], bound[i] - value[i], holds});
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    out.first_hold[i] = last_fail[i] + 1;
    out.report.add_metric({std::string("first_hold_") + kN0ConditionNames[i], out.first_hold[i],
                           static_cast<double>(out.first_hold[i]), ""});
  }
  out.n0 = *std::max_element(out.first_hold.begin(), out.first_hold.end());
  out.report.add_metric({"n0", out.n0, static_cast<double>(out.n0), ""});
  if (out.n0 > horizon) {
    out.report.add_note("some condition fails at the horizon");
  }
  return out;
}

std::vector<ScanReport> scan_identities(NRange range, const ScanConfig& config) {
  check_range(range, 1, kMaxExactN);
  const auto pts = interior_points(config.grid);
  const int threads = config.threads;
  std::vector<ScanReport> out;

  if (range.lo == 1) {
    ScanReport rep = grid_report("closed_form_n1", true, NRange{1, 1}, config);
    run_grid(rep, NRange{1, 1}, pts, threads, [](int n, const Rational& t) {
      const auto& d = shared_irwin_hall(n);
      const Rational one(1);
      std::vector<ScanRow> rows;
      rows.push_back(exact_eq_row(n, t, d.tail_at(t), (one - t) / Rational(2)));
      rows.push_back(exact_eq_row(n, t, truncated_mean(d, t), (one + t) / Rational(2)));
      rows.push_back(exact_eq_row(n, t, derived_quantity(d, t), (one + t) / (Rational(3) + t)));
      return rows;
    });
    out.push_back(std::move(rep));
  }

  {
    ScanReport rep = grid_report("one_minus", true, range, config);
    run_grid(rep, range, pts, threads, [](int n, const Rational& t) {
      const auto& d = shared_irwin_hall(n);
      const Rational p = d.tail_at(t);
      const Rational lhs = truncated_mean(d, -t) * (Rational(1) - p);
      const Rational rhs = p * truncated_mean(d, t);
      return std::vector<ScanRow>{exact_eq_row(n, t, lhs, rhs)};
    });
    out.push_back(std::move(rep));
  }

  {
    ScanReport rep = grid_report("log_derivative", true, range, config);
    run_grid(rep, range, pts, threads, [](int n, const Rational& t) {
      const auto& d = shared_irwin_hall(n);
      if (d.tail().is_breakpoint(t)) {
        return std::vector<ScanRow>{};
      }
      const Rational p = d.tail_at(t);
      const Rational lhs = truncated_mean_derivative(d, t) * p;
      const Rational rhs = -(truncated_mean(d, t) - t) * d.tail_derivative_at(t);
      return std::vector<ScanRow>{exact_eq_row(n, t, lhs, rhs)};
    });
    out.push_back(std::move(rep));
  }

  {
    ScanReport rep = grid_report("small_exact", true, range, config);
    run_grid(rep, range, pts, threads, [](int n, const Rational& t) {
      if (t < Rational(1) - Rational(1, n)) {
        return std::vector<ScanRow>{};
      }
      return std::vector<ScanRow>{
          exact_eq_row(n, t, shared_irwin_hall(n).tail_at(t), small_exact_exact(n, t))};
    });
    out.push_back(std::move(rep));
  }

  {
    // Second differences of p^(1/n) over consecutive grid triples.
    ScanReport rep = grid_report("concavity", true, range, config);
    run_grid(rep, range, pts, threads, [&pts](int n, const Rational& t) {
      const auto it = std::find(pts.begin(), pts.end(), t);
      if (it == pts.begin() || it + 1 == pts.end()) {
        return std::vector<ScanRow>{};
      }
      const auto& d = shared_irwin_hall(n);
      auto root = [&](const Rational& s) { return nth_root(d.tail_at(s).to_double(), n); };
      const double second = root(*(it - 1)) + root(*(it + 1)) - 2 * root(t);
      return std::vector<ScanRow>{
          make_row(n, t, second, 0.0, -second, second <= kFloatMargin)};
    });
    out.push_back(std::move(rep));
  }

  {
    // p strictly decreasing and m strictly increasing between grid neighbours.
    ScanReport rep = grid_report("monotone_tail_mean", true, range, config);
    run_grid(rep, range, pts, threads, [&pts](int n, const Rational& t) {
      const auto it = std::find(pts.begin(), pts.end(), t);
      if (it + 1 == pts.end()) {
        return std::vector<ScanRow>{};
      }
      const auto& d = shared_irwin_hall(n);
      const Rational& u = *(it + 1);
      const Rational p0 = d.tail_at(t);
      const Rational p1 = d.tail_at(u);
      const Rational m0 = truncated_mean(d, t);
      const Rational m1 = truncated_mean(d, u);
      const bool ok = p1 < p0 && m0 < m1;
      const double margin = std::min((p0 - p1).to_double(), (m1 - m0).to_double());
      return std::vector<ScanRow>{make_row(n, t, m0.to_double(), m1.to_double(), margin, ok)};
    });
    out.push_back(std::move(rep));
  }

  {
    ScanReport rep("mgf", true);
    rep.set_n_range(0, 0);
    rep.set_grid_description("mu = k/64, k = 1..256");
    for (int k = 1; k <= 256; ++k) {
      const double mu = k / 64.0;
      const MgfPair m = mgf_bound(mu);
      rep.add(ScanRow{0, format_double(mu), m.mgf, m.bound, m.bound - m.mgf, m.mgf < m.bound});
    }
    out.push_back(std::move(rep));
  }

  {
    ScanReport se = grid_report("envelope_small_exact", true, range, config);
    ScanReport ch = grid_report("envelope_chernoff", true, range, config);
    ScanReport va = grid_report("envelope_variance", true, range, config);
    ScanReport ha = grid_report("envelope_half", true, range, config);
    ScanReport cm = grid_report("envelope_concave_mean", true, range, config);
    ScanReport cd = grid_report("envelope_concave_derived", true, range, config);
    enum Slot { kSe, kCh, kVa, kHa, kCm, kCd, kSlots };
    const std::size_t per = pts.size();
    const std::size_t count = static_cast<std::size_t>(range.hi - range.lo + 1) * per;
    std::vector<std::array<std::optional<ScanRow>, kSlots>> rows(count);
    parallel_for(count, threads, [&](std::size_t i) {
      const int n = range.lo + static_cast<int>(i / per);
      const Rational& t = pts[i % per];
      const double tv = t.to_double();
      const auto& d = shared_irwin_hall(n);
      const double p = d.tail_at(t).to_double();
      const double m = truncated_mean(d, t).to_double();
      const TailEnvelopes env = envelope_bounds(n, tv);
      auto& r = rows[i];
      if (env.small_exact) r[kSe] = envelope_row(n, t, p, *env.small_exact);
      if (env.chernoff) r[kCh] = envelope_row(n, t, p, *env.chernoff);
      if (env.variance) r[kVa] = envelope_row(n, t, m, *env.variance);
      if (env.half) r[kHa] = envelope_row(n, t, m, *env.half);
      if (tv > 0) {
        try {
          r[kCm] = envelope_row(n, t, m, concave_mean_bound(d, t));
        } catch (const DomainError&) {
        }
        try {
          const double dq = derived_quantity(d, t).to_double();
          r[kCd] = envelope_row(n, t, dq, concave_derived_bound(d, t));
        } catch (const DomainError&) {
        }
      }
    });
    std::array<ScanReport*, kSlots> reps{&se, &ch, &va, &ha, &cm, &cd};
    for (auto& slot : rows) {
      for (std::size_t k = 0; k < kSlots; ++k) {
        if (slot[k]) reps[k]->add(std::move(*slot[k]));
      }
    }
    for (ScanReport* r : reps) out.push_back(std::move(*r));
  }
  return out;
}

std::vector<ScanReport> scan_hp(const HpConfig& config) {
  struct Point {
    std::vector<double> x;
    std::string label;
  };
  std::vector<Point> points;
  for (int n : config.dims) {
    if (n < 1 || n > kMaxSolveDim) {
      throw DomainError("hp dimension outside [1, " + std::to_string(kMaxSolveDim) + "]");
    }
    const std::size_t k = config.coords.size();
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= k;
    for (std::size_t idx = 0; idx < total; ++idx) {
      Point p;
      std::size_t rem = idx;
      for (int i = 0; i < n; ++i) {
        p.x.push_back(config.coords[rem % k]);
        rem /= k;
      }
      std::reverse(p.x.begin(), p.x.end());
      for (std::size_t i = 0; i < p.x.size(); ++i) {
        p.label += (i ? ";" : "") + format_double(p.x[i]);
      }
      points.push_back(std::move(p));
    }
  }

  struct Solved {
    std::optional<double> volume;
    std::string failure;
  };
  std::vector<Solved> solved(points.size());
  parallel_for(points.size(), config.threads, [&](std::size_t i) {
    try {
      const SolveResult r = solve(points[i].x, config.solver);
      const double frac = slice_stats(r.halfspace).volume_fraction;
      solved[i].volume = std::ldexp(frac, static_cast<int>(points[i].x.size()));
    } catch (const NonConvergence& e) {
      solved[i].failure = e.what();
    } catch (const DomainError& e) {
      solved[i].failure = e.what();
    }
  });

  std::string desc = "x in {";
  for (std::size_t i = 0; i < config.coords.size(); ++i) {
    desc += (i ? "," : "") + format_double(config.coords[i]);
  }
  desc += "}^n";
  const int n_lo = config.dims.empty() ? 0 : *std::min_element(config.dims.begin(), config.dims.end());
  const int n_hi = config.dims.empty() ? 0 : *std::max_element(config.dims.begin(), config.dims.end());
  auto make = [&](const char* name, bool assertive) {
    ScanReport r(name, assertive);
    r.set_n_range(n_lo, n_hi);
    r.set_grid_description(desc);
    return r;
  };
  ScanReport hp = make("hp", true);
  ScanReport gt = make("greentree_point", true);
  ScanReport mono = make("hp_ratio_monotone", false);

  std::map<std::vector<double>, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) index[points[i].x] = i;

  auto ratio_of = [&](std::size_t i) {
    double prod = 1;
    for (double v : points[i].x) prod *= std::sqrt(1 - v * v);
    return *solved[i].volume / prod;
  };

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const int n = static_cast<int>(p.x.size());
    if (!solved[i].volume) {
      const ScanPoint sp{n, p.label, std::nan("")};
      hp.add_skipped(sp);
      gt.add_skipped(sp);
      hp.add_note("solver failed at " + p.label + ": " + solved[i].failure);
      continue;
    }
    const double vol = *solved[i].volume;
    const CubePointBounds b = cube_point_bounds(p.x);
    hp.add(ScanRow{n, p.label, vol, b.hp, b.hp - vol, vol < b.hp});
    gt.add(ScanRow{n, p.label, vol, b.greentree, b.greentree - vol, vol < b.greentree});

    // Shrinking one |x_i| to the next grid magnitude of the same sign.
    for (std::size_t c = 0; c < p.x.size(); ++c) {
      double best = 0;
      bool found = false;
      for (double v : config.coords) {
        if ((v > 0) == (p.x[c] > 0) && std::fabs(v) < std::fabs(p.x[c]) &&
            (!found || std::fabs(v) > std::fabs(best))) {
          best = v;
          found = true;
        }
      }
      if (!found) continue;
      auto y = p.x;
      y[c] = best;
      const auto it = index.find(y);
      if (it == index.end() || !solved[it->second].volume) continue;
      const double r0 = ratio_of(i);
      const double r1 = ratio_of(it->second);
      mono.add(ScanRow{n, p.label + "|" + std::to_string(c), r0, r1, r1 - r0, r1 > r0});
    }
  }
  if (!hp.skipped().empty()) {
    hp.add_note(std::to_string(hp.skipped().size()) + " points skipped after solver failure");
  }

  ScanReport ratio("greentree_ratio", true);
  ratio.set_n_range(1, 50);
  ratio.set_grid_description("n = 1..50");
  double prev = 0;
  for (int n = 1; n <= 50; ++n) {
    const double r = greentree_ratio(n);
    const bool ok = r < std::numbers::e && r > prev;
    ratio.add(ScanRow{n, std::to_string(n), r, std::numbers::e, std::numbers::e - r, ok});
    prev = r;
  }
  for (int n = 1; n <= 1000; ++n) {
    if (greentree_ratio(n) > 2.6) {
      ratio.add_metric({"first_n_above_2.6", n, greentree_ratio(n), ""});
      break;
    }
  }

  std::vector<ScanReport> out;
  out.push_back(std::move(hp));
  out.push_back(std::move(gt));
  out.push_back(std::move(mono));
  out.push_back(std::move(ratio));
  return out;
}

std::vector<ScanReport> scan_monotone_in_n(int n_max, const ScanConfig& config) {
  if (n_max < 2 || n_max > kMaxExactN) {
    throw DomainError("n_max must lie in [2, " + std::to_string(kMaxExactN) + "]");
  }
  const auto pts = interior_points(config.grid);
  const NRange range{1, n_max - 1};
  ScanReport root = grid_report("monotone_root_tail", false, NRange{1, n_max}, config);
  ScanReport mean = grid_report("monotone_truncated_mean", false, NRange{1, n_max}, config);
  ScanReport peak = grid_report("peakedness", true, NRange{1, n_max}, config);
  const std::size_t per = pts.size();
  const std::size_t count = static_cast<std::size_t>(range.hi) * per;
  std::vector<std::array<ScanRow, 3>> rows(count);
  parallel_for(count, config.threads, [&](std::size_t i) {
    const int n = 1 + static_cast<int>(i / per);
    const Rational& t = pts[i % per];
    const auto& a = shared_irwin_hall(n);
    const auto& b = shared_irwin_hall(n + 1);
    const Rational pa = a.tail_at(t);
    const Rational pb = b.tail_at(t);
    const double ra = nth_root(pa.to_double(), n);
    const double rb = nth_root(pb.to_double(), n + 1);
    rows[i][0] = make_row(n, t, ra, rb, rb - ra, rb >= ra);
    const Rational ma = truncated_mean(a, t);
    const Rational mb = truncated_mean(b, t);
    rows[i][1] = make_row(n, t, ma.to_double(), mb.to_double(), (mb - ma).to_double(), mb >= ma);
    // For t < 0 the tail grows with n, for t > 0 it shrinks.
    const int s = t.sign();
    const Rational diff = s < 0 ? pb - pa : pa - pb;
    const bool ok = s == 0 ? pa == pb : diff.sign() >= 0;
    rows[i][2] = make_row(n, t, pa.to_double(), pb.to_double(), diff.to_double(), ok);
  });
  for (auto& r : rows) {
    root.add(std::move(r[0]));
    mean.add(std::move(r[1]));
    peak.add(std::move(r[2]));
  }
  root.add_note("value = p_n(t)^(1/n), bound = p_(n+1)(t)^(1/(n+1))");
  mean.add_note("value = m_n(t), bound = m_(n+1)(t); the direction is reported, not asserted");
  peak.add_note("value = p_n(t), bound = p_(n+1)(t); margin signed by the side of t");
  std::vector<ScanReport> out;
  out.push_back(std::move(root));
  out.push_back(std::move(mean));
  out.push_back(std::move(peak));
  return out;
}

ScanReport scan_mc_check(int cases, std::uint64_t samples, std::uint64_t seed, int threads) {
  if (cases < 1) {
    throw DomainError("cases must be >= 1");
  }
  ScanReport rep("mc_check", true);
  rep.set_n_range(2, 8);
  rep.set_grid_description(std::to_string(cases) + " random halfspaces, " +
                           std::to_string(samples) + " samples, seed " + std::to_string(seed));
  rep.set_allowed_violations(static_cast<std::size_t>(cases / 25));
  // Case parameters come from a Philox stream keyed apart from the samples.
  const std::uint64_t case_seed = seed ^ 0x5bd1e9955bd1e995ULL;
  for (int k = 0; k < cases; ++k) {
    std::array<double, 18> u{};
    cube_sample(case_seed, static_cast<std::uint64_t>(k), u);  // values in [-1, 1)
    auto unit = [&](std::size_t i) { return (u[i] + 1) / 2; };
    const int n = 2 + static_cast<int>(unit(0) * 7);
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      // Box-Muller from two uniforms in (0, 1].
      const auto j = 2 * static_cast<std::size_t>(i);
      const double a = 1 - unit(2 + j);
      const double b = unit(3 + j);
      theta[static_cast<std::size_t>(i)] =
          std::sqrt(-2 * std::log(a)) * std::cos(2 * std::numbers::pi * b);
    }
    double l1 = 0;
    for (double v : theta) l1 += std::fabs(v);
    const Halfspace h = normalized(theta, 0.6 * u[1] * l1);
    const ExactSliceStats exact = slice_stats(ExactHalfspace{
        [&] {
          std::vector<Rational> d;
          for (double v : h.direction) d.push_back(Rational::from_double(v));
          return d;
        }(),
        Rational::from_double(h.offset)});
    const McEstimate mc = estimate_slice(h, samples, seed + static_cast<std::uint64_t>(k), threads);
    double z = std::fabs(mc.volume_fraction - exact.volume_fraction.to_double()) /
               mc.volume_std_error;
    for (int i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(i);
      z = std::max(z, std::fabs(mc.barycenter[j] - exact.barycenter[j].to_double()) /
                          mc.barycenter_std_error[j]);
    }
    std::string lbl = "case" + std::to_string(k);
    rep.add(ScanRow{n, lbl, z, 3.0, 3.0 - z, z < 3.0});
  }
  return rep;
}

}  // namespace isobary
