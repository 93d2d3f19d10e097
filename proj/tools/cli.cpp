#include "cli.hpp"

#include "isobary/bounds.hpp"
#include "isobary/cube_slice.hpp"
#include "isobary/errors.hpp"
#include "isobary/halfspace_solver.hpp"
#include "isobary/irwin_hall.hpp"
#include "isobary/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace isobary::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OutputArgs {
  std::string format = "json";
  std::string output;
};

struct ScanArgs {
  std::string n;
  std::string step = "1/256";
  std::string inset = "1/512";
  OutputArgs out;
  int threads = default_thread_count();
};

NRange parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw UsageError("--n expects N or A..B, got '" + text + "'");
  }
}

int parse_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError(std::string(what) + " expects an integer, got '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split(text)) out.push_back(Rational::parse(s));
  if (out.empty()) {
    throw UsageError("expected a comma-separated list of numbers");
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& r : parse_rationals(text)) out.push_back(r.to_double());
  return out;
}

// "2", "2/3", "sqrt3" or "A-1/n" (A minus 1/n).
std::function<double(int)> parse_param(const std::string& text) {
  if (text == "sqrt3") {
    return [](int) { return std::numbers::sqrt3; };
  }
  const std::string suffix = "-1/n";
  if (text.size() > suffix.size() && text.ends_with(suffix)) {
    const double a = Rational::parse(text.substr(0, text.size() - suffix.size())).to_double();
    return [a](int n) { return a - 1.0 / n; };
  }
  const double v = Rational::parse(text).to_double();
  return [v](int) { return v; };
}

ScanConfig scan_config(const ScanArgs& a) {
  ScanConfig c;
  c.grid = GridSpec::symmetric(Rational::parse(a.step), Rational::parse(a.inset));
  if (a.threads < 1) {
    throw UsageError("--threads must be >= 1");
  }
  c.threads = a.threads;
  return c;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    f << content;
    f.flush();
    if (!f) {
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_of(const ScanReport& r) {
  std::ostringstream os;
  r.write_csv(os);
  return os.str();
}

int emit_reports(const std::vector<ScanReport>& reports, const OutputArgs& a, std::ostream& out,
                 std::ostream& err) {
  if (a.format == "json") {
    const std::string text = reports_to_json(reports) + "\n";
    if (a.output.empty()) {
      out << text;
    } else {
      write_atomic(a.output, text);
    }
  } else if (reports.size() == 1 || a.output.empty()) {
    if (a.output.empty()) {
      for (const auto& r : reports) {
        if (reports.size() > 1) out << "# " << r.name() << '\n';
        out << csv_of(r);
      }
    } else {
      write_atomic(a.output, csv_of(reports.front()));
    }
  } else {
    const std::filesystem::path base(a.output);
    for (const auto& r : reports) {
      std::filesystem::path p = base.parent_path() /
                                (base.stem().string() + "-" + r.name() + base.extension().string());
      write_atomic(p, csv_of(r));
    }
  }
  bool failed = false;
  for (const auto& r : reports) {
    err << r.name() << ": " << to_string(r.verdict()) << " (" << r.rows().size() << " points, "
        << r.violation_count() << " violations";
    if (r.worst_point()) {
      err << ", worst margin " << format_double(r.worst_point()->margin) << " at n="
          << r.worst_point()->n << " t=" << r.worst_point()->t;
    }
    err << ")\n";
    failed = failed || r.failed();
  }
  return failed ? kExitFail : kExitOk;
}

void add_output_options(CLI::App* sub, OutputArgs& a) {
  sub->add_option("--format", a.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", a.output, "Write the report to this file (atomically)");
}

void add_scan_options(CLI::App* sub, ScanArgs& a, const std::string& default_n) {
  a.n = default_n;
  sub->add_option("--n", a.n, "Dimension N or range A..B")->capture_default_str();
  sub->add_option("--step", a.step, "Grid step (rational)")->capture_default_str();
  sub->add_option("--inset", a.inset, "Distance of the first/last grid point from -1/1")
      ->capture_default_str();
  sub->add_option("--threads", a.threads, "Worker threads (default: ISOBARY_THREADS or cores)");
  add_output_options(sub, a.out);
}

void print_object(const ordered_json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) {
    out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
}

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numerical checks for halfspace slices of the cube"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  CLI::App* verify = app.add_subcommand("verify", "Run a grid scan and emit a report");
  verify->require_subcommand(1);

  ScanArgs diag_a;
  ScanArgs derived_a;
  ScanArgs conj_a;
  ScanArgs regions_a;
  ScanArgs ident_a;
  ScanArgs mono_a;
  auto* diag = verify->add_subcommand("diag", "Diagonal inequality: gap < 0");
  add_scan_options(diag, diag_a, "1..20");
  auto* derived = verify->add_subcommand("derived", "n D(t) < 1 (assertive)");
  add_scan_options(derived, derived_a, "1..20");
  auto* conj = verify->add_subcommand("conjecture", "2n D(t) < 1 (report-only)");
  add_scan_options(conj, conj_a, "1..20");

  auto* regions = verify->add_subcommand("regions", "Five-region bounds on D and the combined bound");
  add_scan_options(regions, regions_a, "12..40");
  std::string alpha = "2";
  std::string beta = "3";
  std::string gamma = "1/2";
  std::string region_list = "1,2,3,4,5";
  bool no_combined = false;
  regions->add_option("--alpha", alpha, "alpha: number, sqrt3 or A-1/n")->capture_default_str();
  regions->add_option("--beta", beta, "beta")->capture_default_str();
  regions->add_option("--gamma", gamma, "gamma")->capture_default_str();
  regions->add_option("--regions", region_list, "Comma-separated regions to check")
      ->capture_default_str();
  regions->add_flag("--no-combined", no_combined, "Skip the 3/(2n-15) scan");

  auto* n0 = verify->add_subcommand("n0", "Large-n conditions and their first-hold indices");
  int horizon = 10000;
  OutputArgs n0_out;
  n0->add_option("--horizon", horizon, "Largest n tested")->capture_default_str();
  add_output_options(n0, n0_out);

  auto* ident = verify->add_subcommand("identities", "Exact identities and envelope bounds");
  add_scan_options(ident, ident_a, "1..10");

  auto* hp = verify->add_subcommand("hp", "Volume at a barycenter vs the product bounds");
  std::string hp_dims = "2,3,4";
  std::string hp_coords = "-0.9,-0.6,-0.3,0.3,0.6,0.9";
  int hp_threads = default_thread_count();
  OutputArgs hp_out;
  hp->add_option("--dims", hp_dims, "Dimensions")->capture_default_str();
  hp->add_option("--coords", hp_coords, "Coordinate values of the grid")->capture_default_str();
  hp->add_option("--threads", hp_threads, "Worker threads");
  add_output_options(hp, hp_out);

  auto* mono = verify->add_subcommand("monotone", "Dependence on n at fixed t");
  add_scan_options(mono, mono_a, "20");

  auto* mc = verify->add_subcommand("mc-check", "Exact slice statistics vs Monte Carlo");
  int mc_cases = 50;
  std::uint64_t mc_samples = 1000000;
  std::uint64_t mc_seed = 20240501;
  int mc_threads = default_thread_count();
  OutputArgs mc_out;
  mc->add_option("--cases", mc_cases, "Random halfspaces")->capture_default_str();
  mc->add_option("--samples", mc_samples, "Samples per case")->capture_default_str();
  mc->add_option("--seed", mc_seed, "Seed")->capture_default_str();
  mc->add_option("--threads", mc_threads, "Worker threads");
  add_output_options(mc, mc_out);

  // Point queries.
  std::string q_n;
  std::string q_t;
  std::string q_format = "text";
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("--n", q_n, "Dimension")->required();
    sub->add_option("--t", q_t, "Threshold t (rational or decimal)")->required();
    sub->add_option("--format", q_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };
  auto* tail = app.add_subcommand("tail", "Exact p(t) = P(X > t)");
  add_point(tail);
  auto* mean = app.add_subcommand("mean", "Exact m(t) = E[X | X > t] and D(t)");
  add_point(mean);
  auto* bnds = app.add_subcommand("bounds", "All bounds at (n, t)");
  add_point(bnds);
  bnds->add_option("--alpha", alpha, "alpha")->capture_default_str();
  bnds->add_option("--beta", beta, "beta")->capture_default_str();
  bnds->add_option("--gamma", gamma, "gamma")->capture_default_str();

  auto* slice = app.add_subcommand("slice", "Volume fraction and barycenter of {<theta,u> >= c}");
  std::string s_theta;
  std::string s_c;
  std::string s_format = "text";
  slice->add_option("--theta", s_theta, "Normal vector, comma-separated")->required();
  slice->add_option("--c", s_c, "Offset")->required();
  slice->add_option("--format", s_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* solve_cmd = app.add_subcommand("solve", "Halfspace slice with a given barycenter");
  std::string x_text;
  std::string m_text;
  std::string d_n;
  double tolerance = 1e-10;
  bool no_multistart = false;
  std::string v_format = "text";
  solve_cmd->add_option("--x", x_text, "Target barycenter, comma-separated");
  solve_cmd->add_option("--m", m_text, "Diagonal target m (with --n)");
  solve_cmd->add_option("--n", d_n, "Dimension for --m");
  solve_cmd->add_option("--tolerance", tolerance, "Residual tolerance")->capture_default_str();
  solve_cmd->add_flag("--no-multistart", no_multistart, "Single start only");
  solve_cmd->add_option("--format", v_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*verify) {
      if (*diag) {
        return emit_reports({scan_diag(parse_range(diag_a.n), scan_config(diag_a))}, diag_a.out,
                            out, err);
      }
      if (*derived) {
        return emit_reports({scan_derived(parse_range(derived_a.n), 1, scan_config(derived_a))},
                            derived_a.out, out, err);
      }
      if (*conj) {
        return emit_reports({scan_derived(parse_range(conj_a.n), 2, scan_config(conj_a))},
                            conj_a.out, out, err);
      }
      if (*regions) {
        const NRange r = parse_range(regions_a.n);
        const auto fa = parse_param(alpha);
        const auto fb = parse_param(beta);
        const auto fg = parse_param(gamma);
        std::vector<Region> which;
        for (const auto& s : split(region_list)) {
          const int k = parse_int(s, "--regions");
          if (k < 1 || k > 5) throw UsageError("--regions entries must be 1..5");
          which.push_back(static_cast<Region>(k));
        }
        const ScanConfig cfg = scan_config(regions_a);
        std::vector<ScanReport> reps;
        reps.push_back(scan_lemma_regions(
            r, [&](int n) { return RegionParams{fa(n), fb(n), fg(n), n}; }, which, cfg));
        if (!no_combined && r.lo >= 12) reps.push_back(scan_combined(r, cfg));
        return emit_reports(reps, regions_a.out, out, err);
      }
      if (*n0) {
        N0Result res = find_n0(horizon);
        out.flush();
        err << "n0 = " << res.n0 << " (";
        for (std::size_t i = 0; i < 4; ++i) {
          err << (i ? ", " : "") << kN0ConditionNames[i] << " from " << res.first_hold[i];
        }
        err << ")\n";
        return emit_reports({std::move(res.report)}, n0_out, out, err);
      }
      if (*ident) {
        return emit_reports(scan_identities(parse_range(ident_a.n), scan_config(ident_a)),
                            ident_a.out, out, err);
      }
      if (*hp) {
        HpConfig cfg;
        cfg.dims.clear();
        for (const auto& s : split(hp_dims)) cfg.dims.push_back(parse_int(s, "--dims"));
        cfg.coords = parse_doubles(hp_coords);
        if (hp_threads < 1) throw UsageError("--threads must be >= 1");
        cfg.threads = hp_threads;
        return emit_reports(scan_hp(cfg), hp_out, out, err);
      }
      if (*mono) {
        const NRange r = parse_range(mono_a.n);
        return emit_reports(scan_monotone_in_n(r.hi, scan_config(mono_a)), mono_a.out, out, err);
      }
      if (*mc) {
        if (mc_threads < 1) throw UsageError("--threads must be >= 1");
        return emit_reports({scan_mc_check(mc_cases, mc_samples, mc_seed, mc_threads)}, mc_out,
                            out, err);
      }
    }

    if (*tail || *mean || *bnds) {
      const int n = parse_int(q_n, "--n");
      const Rational t = Rational::parse(q_t);
      ordered_json j;
      j["n"] = n;
      j["t"] = t.str();
      const bool exact = n <= kMaxExactN;
      if (*tail) {
        if (exact) {
          const Rational p = shared_irwin_hall(n).tail_at(t);
          if (q_format == "text") {
            out << p.str() << '\n';
            return kExitOk;
          }
          j["tail"] = p.str();
          j["tail_float"] = number(p.to_double());
        } else {
          const FloatTail f = irwin_hall_float(n, t.to_double());
          j["tail_float"] = number(static_cast<double>(f.tail));
          if (q_format == "text") {
            out << format_double(static_cast<double>(f.tail)) << '\n';
            return kExitOk;
          }
        }
      } else if (*mean) {
        if (exact) {
          const auto& d = shared_irwin_hall(n);
          const Rational m = truncated_mean(d, t);
          j["mean"] = m.str();
          j["mean_float"] = number(m.to_double());
          const Rational dq = derived_quantity(d, t);
          j["derived"] = dq.str();
          j["derived_float"] = number(dq.to_double());
        } else {
          const FloatTail f = irwin_hall_float(n, t.to_double());
          j["mean_float"] = number(static_cast<double>(f.truncated_mean));
          j["derived_float"] = number(derived_quantity_float(n, t.to_double()));
        }
      } else {
        const double tv = t.to_double();
        const auto fa = parse_param(alpha);
        const auto fb = parse_param(beta);
        const auto fg = parse_param(gamma);
        const RegionParams p{fa(n), fb(n), fg(n), n};
        j["region"] = static_cast<int>(region_of(tv, p));
        for (int k = 1; k <= 5; ++k) {
          const std::string key = "h" + std::to_string(k);
          try {
            j[key] = number(lemma_bound(static_cast<Region>(k), p));
          } catch (const DomainError& e) {
            j[key] = std::string("inapplicable: ") + e.condition();
          }
        }
        if (n >= 12) j["combined"] = number(combined_bound(n));
        const TailEnvelopes env = envelope_bounds(n, tv);
        if (env.small_exact) j["small_exact"] = number(*env.small_exact);
        if (env.small_exact_e) j["small_exact_e"] = number(*env.small_exact_e);
        if (env.chernoff) j["chernoff"] = number(*env.chernoff);
        if (env.variance) j["variance"] = number(*env.variance);
        if (env.half) j["half"] = number(*env.half);
        if (exact && tv > 0 && tv < 1) {
          const auto& d = shared_irwin_hall(n);
          try {
            j["concave_mean"] = number(concave_mean_bound(d, t));
          } catch (const DomainError& e) {
            j["concave_mean"] = std::string("inapplicable: ") + e.condition();
          }
          try {
            j["concave_derived"] = number(concave_derived_bound(d, t));
          } catch (const DomainError& e) {
            j["concave_derived"] = std::string("inapplicable: ") + e.condition();
          }
        }
      }
      print_object(j, q_format, out);
      return kExitOk;
    }

    if (*slice) {
      const auto theta = parse_rationals(s_theta);
      const Rational c = Rational::parse(s_c);
      ordered_json j;
      j["dimension"] = theta.size();
      if (static_cast<int>(theta.size()) <= kMaxExactSliceDim) {
        const ExactSliceStats s = slice_stats(ExactHalfspace{theta, c});
        j["volume_fraction"] = s.volume_fraction.str();
        j["volume_fraction_float"] = number(s.volume_fraction.to_double());
        ordered_json b = ordered_json::array();
        ordered_json bf = ordered_json::array();
        for (const auto& v : s.barycenter) {
          b.push_back(v.str());
          bf.push_back(number(v.to_double()));
        }
        j["barycenter"] = std::move(b);
        j["barycenter_float"] = std::move(bf);
      } else {
        std::vector<double> dir;
        for (const auto& v : theta) dir.push_back(v.to_double());
        const SliceStats s = slice_stats_float(normalized(dir, c.to_double()));
        j["volume_fraction_float"] = number(s.volume_fraction);
        ordered_json bf = ordered_json::array();
        for (double v : s.barycenter) bf.push_back(number(v));
        j["barycenter_float"] = std::move(bf);
      }
      print_object(j, s_format, out);
      return kExitOk;
    }

    if (*solve_cmd) {
      ordered_json j;
      if (!m_text.empty()) {
        if (d_n.empty() || !x_text.empty()) {
          throw UsageError("--m needs --n and excludes --x");
        }
        const int n = parse_int(d_n, "--n");
        const DiagonalSolution s = solve_diagonal(n, Rational::parse(m_text));
        j["n"] = n;
        j["m"] = Rational::parse(m_text).str();
        j["t"] = s.t.str();
        j["t_float"] = number(s.t.to_double());
        j["exact"] = s.exact;
        j["side"] = s.lower ? "sum u <= n t" : "sum u >= n t";
      } else {
        if (x_text.empty()) {
          throw UsageError("solve needs --x or --m/--n");
        }
        SolveOptions opt;
        opt.tolerance = tolerance;
        opt.multistart = !no_multistart;
        const SolveResult r = solve(parse_doubles(x_text), opt);
        ordered_json th = ordered_json::array();
        for (double v : r.halfspace.direction) th.push_back(number(v));
        j["theta"] = std::move(th);
        j["c"] = number(r.halfspace.offset);
        j["residual"] = number(r.residual);
        j["iterations"] = r.iterations;
        j["multistart_agreement"] = r.multistart_agreement;
        j["multistart_spread"] = number(r.multistart_spread);
        j["converged_starts"] = std::to_string(r.converged_starts) + "/" + std::to_string(r.starts);
        j["volume_fraction"] = number(slice_stats(r.halfspace).volume_fraction);
      }
      print_object(j, v_format, out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFail;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace isobary::cli
