#include "isobary/bounds.hpp"
#include "isobary/cube_slice.hpp"
#include "isobary/halfspace_solver.hpp"
#include "isobary/irwin_hall.hpp"
#include "isobary/scan_report.hpp"
#include "isobary/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace isobary;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Rational power(const Rational& base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r = r * Rational(i);
  return r;
}

const ScanReport* find(const std::vector<ScanReport>& reports, const std::string& name) {
  for (const auto& r : reports) {
    if (r.name() == name) return &r;
  }
  return nullptr;
}

std::string summary(const ScanReport& r) {
  std::ostringstream os;
  os << r.name() << " " << to_string(r.verdict()) << " (" << r.rows().size() << " points, "
     << r.violation_count() << " violations)";
  return os.str();
}

Outcome c1() {
  Timer timer;
  int checked = 0;
  for (int n = 2; n <= 10; ++n) {
    const auto d = IrwinHallTail::build(n);
    for (int k = 0; k < 5; ++k) {
      const Rational t = Rational(1) - Rational(1, n) + Rational(k, 5 * n);
      const Rational expected =
          power(Rational(n) * (Rational(1) - t) / Rational(2), n) / factorial(n);
      if (d.tail_at(t) != expected) {
        return {false, "tail mismatch at n=" + std::to_string(n) + " t=" + t.str()};
      }
      ++checked;
    }
  }
  const double s = timer.seconds();
  return {s < 1.0, std::to_string(checked) + " exact equalities in " + format_double(s) + " s"};
}

Outcome c2() {
  const auto d = IrwinHallTail::build(1);
  const Rational one(1);
  int checked = 0;
  for (const Rational& t : GridSpec::symmetric().points()) {
    const bool ok = d.tail_at(t) == (one - t) / Rational(2) &&
                    truncated_mean(d, t) == (one + t) / Rational(2) &&
                    derived_quantity(d, t) == (one + t) / (Rational(3) + t);
    if (!ok) return {false, "n=1 closed form fails at t=" + t.str()};
    ++checked;
  }
  return {checked == 512, std::to_string(checked) + " grid points, p, m and D exact"};
}

Outcome c3() {
  const auto reports = scan_identities({1, 10});
  const ScanReport* om = find(reports, "one_minus");
  const ScanReport* ld = find(reports, "log_derivative");
  if (om == nullptr || ld == nullptr) return {false, "identity reports missing"};
  const bool pass = !om->failed() && !ld->failed() && om->violation_count() == 0 &&
                    ld->violation_count() == 0 && !om->rows().empty() && !ld->rows().empty();
  return {pass, summary(*om) + "; " + summary(*ld)};
}

Outcome c4() {
  Timer timer;
  const ScanReport r = scan_diag({1, 20});
  const double s = timer.seconds();
  const auto gap = r.min_abs_value();
  const bool pass = r.verdict() == Verdict::kPass && r.rows().size() == 20U * 512 && s < 60 &&
                    gap.has_value() && *gap > 0;
  return {pass, summary(r) + ", min |gap| " + (gap ? format_double(*gap) : "n/a") + ", " +
                    format_double(s) + " s"};
}

Outcome c5() {
  const ScanReport r = scan_derived({1, 20}, 1);
  double sup = 0;
  for (const auto& m : r.metrics()) sup = std::max(sup, m.value);
  const bool pass = r.assertive() && r.verdict() == Verdict::kPass && r.metrics().size() == 20;
  return {pass, summary(r) + ", max over n of sup nD = " + format_double(sup)};
}

Outcome c6() {
  const ScanReport r = scan_derived({1, 20}, 2);
  double sup = 0;
  for (const auto& m : r.metrics()) sup = std::max(sup, m.value);
  const bool pass = !r.assertive() && r.verdict() == Verdict::kReportOnly &&
                    r.violation_count() == 0 && r.rows().size() == 20U * 512;
  return {pass, summary(r) + ", max over n of sup 2nD = " + format_double(sup)};
}

Outcome c7() {
  const RegionParamsForN params = [](int n) { return RegionParams{2.0, 3.0, 0.5, n}; };
  const ScanReport regions = scan_lemma_regions(
      {12, 40}, params, {Region::k1, Region::k2, Region::k3, Region::k4, Region::k5});
  const ScanReport combined = scan_combined({12, 40});
  const bool pass = regions.verdict() == Verdict::kPass && combined.verdict() == Verdict::kPass &&
                    regions.rows().size() == 29U * 512 && combined.rows().size() == 29U * 512;
  return {pass, summary(regions) + "; " + summary(combined)};
}

Outcome c8() {
  const N0Result r = find_n0(10000);
  // beta = sqrt 3: (1+b)/(3n-(1+b)^2) < 1/n  <=>  n > 14 + 8 sqrt 3.
  const int analytic = static_cast<int>(std::floor(14 + 8 * std::sqrt(3.0))) + 1;
  bool joint = r.n0 >= 1 && r.n0 <= r.horizon && r.horizon == 10000;
  for (int f : r.first_hold) joint = joint && f >= 1 && f <= r.n0;
  const bool pass = r.first_hold[1] == 28 && analytic == 28 && joint;
  std::ostringstream os;
  os << "h3 first holds at " << r.first_hold[1] << " (analytic " << analytic << "), n0 = " << r.n0
     << ", joint through " << r.horizon;
  return {pass, os.str()};
}

Outcome c9() {
  int checked = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k <= 3; ++k) {
      const Rational t = Rational(1) - Rational(k, 2 * n);
      const ExactSliceStats s = simplex_slice(n, t);
      const ExactSliceStats g = slice_stats(diagonal_halfspace(n, t));
      const Rational volume =
          power(Rational(n), n) * power(Rational(1) - t, n) / factorial(n) / power(Rational(2), n);
      const Rational bary = (Rational(n) * t + Rational(1)) / Rational(n + 1);
      bool ok = s.volume_fraction == g.volume_fraction && s.barycenter == g.barycenter &&
                s.volume_fraction == volume;
      for (const auto& b : s.barycenter) ok = ok && b == bary;
      if (!ok) return {false, "mismatch at n=" + std::to_string(n) + " t=" + t.str()};
      ++checked;
    }
  }
  return {checked == 21, std::to_string(checked) + " (n, t) pairs exact"};
}

Outcome c10() {
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> u(-0.85, 0.85);
  int checked = 0;
  double worst_residual = 0;
  double worst_spread = 0;
  double worst_diag = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int k = 0; k < 10; ++k) {
      std::vector<double> x(static_cast<std::size_t>(n));
      const bool diagonal = k < 4;
      if (diagonal) {
        const double m[] = {-0.5, 0.2, 0.55, 0.8};
        std::fill(x.begin(), x.end(), m[k]);
      } else {
        for (auto& v : x) v = u(rng);
      }
      const SolveResult r = solve(x);
      if (!r.multistart_agreement) return {false, "multistart disagreement"};
      worst_residual = std::max(worst_residual, r.residual);
      worst_spread = std::max(worst_spread, r.multistart_spread);
      if (diagonal) {
        const double e = (x[0] > 0 ? 1 : -1) / std::sqrt(static_cast<double>(n));
        for (double v : r.halfspace.direction) worst_diag = std::max(worst_diag, std::fabs(v - e));
      }
      ++checked;
    }
  }
  const bool pass =
      checked == 30 && worst_residual < 1e-10 && worst_spread < 1e-8 && worst_diag < 1e-8;
  return {pass, std::to_string(checked) + " targets, max residual " +
                    format_double(worst_residual) + ", max spread " + format_double(worst_spread) +
                    ", max diagonal error " + format_double(worst_diag)};
}

std::vector<ScanReport>& hp_reports() {
  static std::vector<ScanReport> reports = scan_hp();
  return reports;
}

Outcome c11() {
  const auto& reports = hp_reports();
  const ScanReport* hp = find(reports, "hp");
  const ScanReport* ratio = find(reports, "hp_ratio_monotone");
  if (hp == nullptr || ratio == nullptr) return {false, "hp reports missing"};
  const bool pass = hp->verdict() == Verdict::kPass && hp->skipped().empty() &&
                    hp->rows().size() == 36U + 216 + 1296 &&
                    ratio->verdict() == Verdict::kReportOnly;
  return {pass, summary(*hp) + "; " + summary(*ratio)};
}

Outcome c12() {
  const auto& reports = hp_reports();
  const ScanReport* point = find(reports, "greentree_point");
  const ScanReport* ratio = find(reports, "greentree_ratio");
  if (point == nullptr || ratio == nullptr) return {false, "greentree reports missing"};
  const double at50 = greentree_ratio(50);
  int first_above = 0;
  for (int n = 1; n <= 200 && first_above == 0; ++n) {
    if (greentree_ratio(n) > 2.6) first_above = n;
  }
  const bool exceeds = at50 > 2.6;
  const bool pass = point->verdict() == Verdict::kPass && ratio->verdict() == Verdict::kPass && exceeds;
  return {pass, summary(*point) + "; " + summary(*ratio) + "; ratio at n=50 is " +
                    format_double(at50) + (exceeds ? " > 2.6" : ", not > 2.6") +
                    " (first exceeds 2.6 at n=" + std::to_string(first_above) + ")"};
}

Outcome c13() {
  const ScanReport a = scan_mc_check();
  const ScanReport b = scan_mc_check();
  const std::size_t within = a.rows().size() - a.violation_count();
  const bool identical = a.to_json() == b.to_json();
  const bool pass = a.rows().size() == 50 && within >= 48 && a.verdict() == Verdict::kPass && identical;
  return {pass, std::to_string(within) + "/50 within 3 sigma, rerun " +
                    (identical ? "byte-identical" : "differs")};
}

Outcome c14() {
  const auto reports = scan_identities({1, 20});
  std::string detail;
  bool pass = true;
  for (const char* name : {"envelope_small_exact", "envelope_chernoff", "envelope_variance",
                           "envelope_half", "envelope_concave_mean", "envelope_concave_derived"}) {
    const ScanReport* r = find(reports, name);
    if (r == nullptr) return {false, std::string(name) + " missing"};
    const double worst = r->worst_point() ? r->worst_point()->margin : 0;
    pass = pass && r->verdict() == Verdict::kPass && !r->rows().empty() && worst > -kFloatMargin;
    if (!detail.empty()) detail += "; ";
    detail += std::string(name) + " worst margin " + format_double(worst);
  }
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<Outcome()>> criteria = {
      {1, c1}, {2, c2},   {3, c3},   {4, c4},   {5, c5},   {6, c6},   {7, c7},
      {8, c8}, {9, c9}, {10, c10}, {11, c11}, {12, c12}, {13, c13}, {14, c14}};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (criteria.count(id) == 0) {
      std::cerr << "unknown criterion " << argv[i] << "\n";
      return 2;
    }
    selected.push_back(id);
  }
  if (selected.empty()) {
    for (const auto& [id, fn] : criteria) selected.push_back(id);
  }
  int failures = 0;
  for (int id : selected) {
    Outcome o;
    try {
      o = criteria.at(id)();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
