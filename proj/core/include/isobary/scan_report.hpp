#pragma once

#include "isobary/rational.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace isobary {

/// Rational grid start, start + step, ..., up to end (inclusive when hit).
struct GridSpec {
  Rational start;
  Rational end;
  Rational step;

  /// (-1 + inset, ..., 1 - inset) in steps of `step`. Defaults: step 1/256,
  /// inset 1/512 (512 points).
  static GridSpec symmetric(const Rational& step = Rational(1, 256),
                            const Rational& inset = Rational(1, 512));

  std::vector<Rational> points() const;
};

enum class Verdict { kPass, kFail, kReportOnly };

const char* to_string(Verdict v);

/// One evaluated point. margin is signed: positive means the checked
/// relation holds with that slack. `t` is the abscissa as written to CSV
/// (a decimal for grid scans, a ';'-joined point for point scans).
struct ScanRow {
  int n = 0;
  std::string t;
  double value = 0;
  double bound = 0;
  double margin = 0;
  bool ok = true;
};

struct ScanPoint {
  int n = 0;
  std::string t;
  double margin = 0;
};

/// Summary statistic attached to a report, e.g. the sup of n*D for one n.
struct ScanMetric {
  std::string name;
  int n = 0;
  double value = 0;
  std::string at;
};

/// Outcome of one scan. An assertive report passes iff it has at most
/// `allowed_violations` violations; report-only scans never fail.
class ScanReport {
 public:
  static constexpr std::size_t kMaxListedViolations = 100;

  ScanReport(std::string name, bool assertive);

  void set_n_range(int lo, int hi);
  void set_grid(const GridSpec& grid);
  void set_grid_description(std::string description);
  void set_allowed_violations(std::size_t allowed) { allowed_violations_ = allowed; }

  void add(ScanRow row);
  void add_metric(ScanMetric metric) { metrics_.push_back(std::move(metric)); }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }
  void add_skipped(ScanPoint point) { skipped_.push_back(std::move(point)); }

  const std::string& name() const noexcept { return name_; }
  bool assertive() const noexcept { return assertive_; }
  Verdict verdict() const;
  bool failed() const { return verdict() == Verdict::kFail; }

  const std::vector<ScanRow>& rows() const noexcept { return rows_; }
  const std::optional<ScanPoint>& worst_point() const noexcept { return worst_; }
  const std::vector<ScanPoint>& violations() const noexcept { return violations_; }
  std::size_t violation_count() const noexcept { return violation_count_; }
  const std::vector<ScanMetric>& metrics() const noexcept { return metrics_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  const std::vector<ScanPoint>& skipped() const noexcept { return skipped_; }
  /// Smallest |value| seen over all rows (used for gaps that must stay away
  /// from zero).
  std::optional<double> min_abs_value() const;

  /// JSON object: name, n_range, grid, verdict, worst_point, violations, ...
  std::string to_json() const;
  /// Header `n,t,value,bound,margin,verdict` and one row per point.
  void write_csv(std::ostream& os) const;

 private:
  std::string name_;
  bool assertive_;
  int n_lo_ = 0;
  int n_hi_ = 0;
  std::optional<GridSpec> grid_;
  std::string grid_description_;
  std::size_t allowed_violations_ = 0;
  std::vector<ScanRow> rows_;
  std::optional<ScanPoint> worst_;
  std::vector<ScanPoint> violations_;
  std::size_t violation_count_ = 0;
  std::vector<ScanMetric> metrics_;
  std::vector<std::string> notes_;
  std::vector<ScanPoint> skipped_;
};

/// JSON array with one object per report.
std::string reports_to_json(const std::vector<ScanReport>& reports);

/// Shortest decimal that round-trips, used for every float in reports.
std::string format_double(double v);

}  // namespace isobary
