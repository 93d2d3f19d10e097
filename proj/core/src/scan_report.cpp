#include "isobary/scan_report.hpp"

#include "json.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

namespace isobary {

namespace {

using nlohmann::ordered_json;

// JSON has no inf/nan; they are written as strings.
ordered_json number(double v) {
  if (std::isfinite(v)) {
    return v;
  }
  return format_double(v);
}

ordered_json point_json(const ScanPoint& p) {
  return ordered_json{{"n", p.n}, {"t", p.t}, {"margin", number(p.margin)}};
}

ordered_json report_json(const ScanReport& r, int n_lo, int n_hi,
                         const std::optional<GridSpec>& grid, const std::string& grid_description,
                         std::size_t allowed) {
  ordered_json j;
  j["name"] = r.name();
  j["verdict"] = to_string(r.verdict());
  j["assertive"] = r.assertive();
  j["n_range"] = ordered_json::array({n_lo, n_hi});
  if (grid) {
    j["grid"] = ordered_json{{"start", grid->start.str()},
                             {"end", grid->end.str()},
                             {"step", grid->step.str()}};
  } else if (!grid_description.empty()) {
    j["grid"] = grid_description;
  } else {
    j["grid"] = nullptr;
  }
  j["points"] = r.rows().size();
  j["worst_point"] = r.worst_point() ? point_json(*r.worst_point()) : ordered_json(nullptr);
  j["violation_count"] = r.violation_count();
  j["allowed_violations"] = allowed;
  ordered_json violations = ordered_json::array();
  for (const auto& v : r.violations()) violations.push_back(point_json(v));
  j["violations"] = std::move(violations);
  ordered_json metrics = ordered_json::array();
  for (const auto& m : r.metrics()) {
    metrics.push_back(
        ordered_json{{"name", m.name}, {"n", m.n}, {"value", number(m.value)}, {"at", m.at}});
  }
  j["metrics"] = std::move(metrics);
  ordered_json skipped = ordered_json::array();
  for (const auto& s : r.skipped()) skipped.push_back(point_json(s));
  j["skipped"] = std::move(skipped);
  j["notes"] = r.notes();
  return j;
}

}  // namespace

GridSpec GridSpec::symmetric(const Rational& step, const Rational& inset) {
  if (step.sign() <= 0) {
    throw std::invalid_argument("grid step must be positive");
  }
  if (inset.sign() < 0 || !(inset < Rational(1))) {
    throw std::invalid_argument("grid inset must lie in [0, 1)");
  }
  return GridSpec{Rational(-1) + inset, Rational(1) - inset, step};
}

std::vector<Rational> GridSpec::points() const {
  if (step.sign() <= 0) {
    throw std::invalid_argument("grid step must be positive");
  }
  std::vector<Rational> out;
  for (Rational t = start; t <= end; t += step) out.push_back(t);
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kReportOnly:
      return "report-only";
  }
  return "unknown";
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ScanReport::ScanReport(std::string name, bool assertive)
    : name_(std::move(name)), assertive_(assertive) {}

void ScanReport::set_n_range(int lo, int hi) {
  n_lo_ = lo;
  n_hi_ = hi;
}

void ScanReport::set_grid(const GridSpec& grid) { grid_ = grid; }

void ScanReport::set_grid_description(std::string description) {
  grid_description_ = std::move(description);
}

void ScanReport::add(ScanRow row) {
  const ScanPoint point{row.n, row.t, row.margin};
  // A NaN margin counts as worst; the first one seen is kept.
  if (!worst_ || (std::isnan(row.margin) && !std::isnan(worst_->margin)) ||
      row.margin < worst_->margin) {
    worst_ = point;
  }
  if (!row.ok) {
    ++violation_count_;
    if (violations_.size() < kMaxListedViolations) {
      violations_.push_back(point);
    }
  }
  rows_.push_back(std::move(row));
}

Verdict ScanReport::verdict() const {
  if (!assertive_) {
    return Verdict::kReportOnly;
  }
  return violation_count_ <= allowed_violations_ ? Verdict::kPass : Verdict::kFail;
}

std::optional<double> ScanReport::min_abs_value() const {
  std::optional<double> out;
  for (const auto& r : rows_) {
    const double a = std::fabs(r.value);
    if (!out || a < *out) out = a;
  }
  return out;
}

std::string ScanReport::to_json() const {
  return report_json(*this, n_lo_, n_hi_, grid_, grid_description_, allowed_violations_).dump(2);
}

void ScanReport::write_csv(std::ostream& os) const {
  os << "n,t,value,bound,margin,verdict\n";
  for (const auto& r : rows_) {
    os << r.n << ',' << r.t << ',' << format_double(r.value) << ',' << format_double(r.bound)
       << ',' << format_double(r.margin) << ',' << (r.ok ? "pass" : "fail") << '\n';
  }
}

std::string reports_to_json(const std::vector<ScanReport>& reports) {
  auto arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(ordered_json::parse(r.to_json()));
  return arr.dump(2);
}

}  // namespace isobary
