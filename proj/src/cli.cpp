#include "peakwave/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "peakwave/branch_store.hpp"
#include "peakwave/continuation.hpp"
#include "peakwave/diagnostics.hpp"
#include "peakwave/kernel.hpp"
#include "peakwave/ostrovsky.hpp"
#include "peakwave/solver.hpp"
#include "peakwave/spectral.hpp"
#include "peakwave/version.hpp"

namespace peakwave::cli {
namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("PEAKWAVE_LOG");
    if (!env) return LogLevel::info;
    const std::string s(env);
    if (s == "error") return LogLevel::error;
    if (s == "debug") return LogLevel::debug;
    return LogLevel::info;
  }();
  return level;
}

void log(LogLevel lvl, const std::string& msg) {
  if (static_cast<int>(lvl) <= static_cast<int>(log_level())) {
    std::cerr << "[peakwave] " << msg << "\n";
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void emit(const std::string& content, const std::string& out_path, bool force) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content, force);
  }
}

const CLI::Validator kSymbolOrder = CLI::Validator(
    [](std::string& s) -> std::string {
      try {
        if (std::stod(s) > 1.0) return "";
      } catch (...) {
      }
      return "r must exceed 1";
    },
    "R>1");

struct KernelOptions {
  double r = 2.0;
  int terms = 10'000;
  int grid = 512;
  std::string method = "all";
  std::string out;
  bool force = false;
};

int run_kernel(const KernelOptions& opt) {
  const KernelSpec spec(opt.r, opt.terms);
  const bool closed_ok = kernel_closed_form_available(opt.r);
  if (opt.method == "closed" && !closed_ok) {
    log(LogLevel::error, "closed form requires an even integer r in [2, 12]");
    return 1;
  }
  std::ostringstream csv;
  csv << "x,value,method,error_bound\n";
  auto row = [&csv](double x, double v, const char* method, double err) {
    csv << format_double(x) << "," << format_double(v) << "," << method << ","
        << format_double(err) << "\n";
  };
  for (int i = 0; i < opt.grid; ++i) {
    const double x = -kPi + 2.0 * kPi * i / opt.grid;
    if (opt.method == "series" || opt.method == "all") {
      const auto e = kernel_series_eval(spec, x);
      row(x, e.value, "series", e.tail_bound);
    }
    if (closed_ok && (opt.method == "closed" || opt.method == "all")) {
      row(x, kernel_closed_form(opt.r, x), "closed", 1e-13);
    }
    if ((opt.method == "gamma" || opt.method == "all") &&
        std::abs(x) >= kernel_gamma_cutoff()) {
      row(x, kernel_gamma_integral(spec, x), "gamma", 1e-8);
    }
  }
  emit(csv.str(), opt.out, opt.force);
  return 0;
}

struct SolveOptions {
  double r = 2.0;
  int k = 1;
  int modes = 1024;
  double mu = 0.0, eps = 0.0, height = 0.0;
  bool has_mu = false, has_eps = false, has_height = false;
  double tol = 1e-10;
  int max_iters = 40;
  std::string out, coeffs_out;
  bool force = false;
};

std::string profile_csv(const WaveSolution& sol) {
  std::ostringstream csv;
  csv << "x,phi\n";
  const Eigen::VectorXd x = PeriodicFunction::grid(sol.phi.modes());
  for (int j = 0; j < sol.phi.modes(); ++j) {
    csv << format_double(x[j]) << "," << format_double(sol.phi.values()[j]) << "\n";
  }
  return csv.str();
}

std::string coeffs_csv(const WaveSolution& sol) {
  std::ostringstream csv;
  csv << "k,c_k\n";
  const auto& c = sol.phi.cos_coeffs();
  for (int k = 1; k <= static_cast<int>(c.size()); ++k) {
    csv << k << "," << format_double(c[k - 1]) << "\n";
  }
  return csv.str();
}

int run_solve(const SolveOptions& opt) {
  const KernelSpec spec(opt.r);
  NewtonConfig cfg;
  cfg.tol_residual = opt.tol;
  cfg.max_iters = opt.max_iters;
  const double mu_star = std::pow(static_cast<double>(opt.k), -opt.r);
  const double mu2 = std::pow(static_cast<double>(opt.k), opt.r) /
                     (8.0 * (1.0 - std::pow(2.0, -opt.r)));

  std::optional<NewtonResult> result;
  if (opt.has_eps) {
    cfg.constraint = Constraint::FirstCoeff(opt.eps);
    result = newton_solve(asymptotic_seed(opt.r, opt.k, opt.eps, opt.modes), cfg, spec);
  } else if (opt.has_mu) {
    cfg.constraint = Constraint::FixedMu();
    double eps0 = 0.0;
    if (opt.mu > mu_star) eps0 = std::min(0.1, std::sqrt((opt.mu - mu_star) / mu2));
    auto seed = asymptotic_seed(opt.r, opt.k, eps0, opt.modes);
    result = newton_solve(make_solution(seed.phi, opt.mu, opt.k, opt.r), cfg, spec);
  } else {
    const double h = opt.height;
    if (!(h > 0.0 && h < mu_star)) {
      log(LogLevel::error, "height must lie in (0, k^-r)");
      return 1;
    }
    const double gap = mu_star - h;
    if (gap <= 0.08) {
      cfg.constraint = Constraint::Height(h);
      result = newton_solve(asymptotic_seed(opt.r, opt.k, std::max(gap, 1e-4), opt.modes), cfg,
                            spec);
    } else {
      ContinuationConfig ccfg;
      ccfg.height_floor = h;
      ccfg.max_modes = opt.modes;
      ccfg.initial_modes = std::min(opt.modes, 256);
      ccfg.newton = cfg;
      auto branch = continue_branch(opt.r, opt.k, ccfg, spec);
      if (branch.points.empty() ||
          branch.termination != BranchTermination::height_floor_reached) {
        log(LogLevel::error, "height continuation stopped: " +
                                 std::string(to_string(branch.termination)));
        return 1;
      }
      result = NewtonResult{branch.points.back().solution, true, SolveFailure::none, 0, {}};
    }
  }

  if (!result->converged) {
    log(LogLevel::error, std::string("solve failed: ") + to_string(result->failure) +
                             ", best residual " + format_double(result->solution.residual_norm));
    return 1;
  }
  const auto& sol = result->solution;
  std::cout << "mu=" << format_double(sol.mu) << " height="
            << format_double(sol.mu - sol.phi.crest_value())
            << " residual=" << format_double(sol.residual_norm)
            << " B=" << format_double(sol.b_constant) << " modes=" << sol.phi.modes() << "\n";
  if (!opt.out.empty()) write_file_atomic(opt.out, profile_csv(sol), opt.force);
  if (!opt.coeffs_out.empty()) write_file_atomic(opt.coeffs_out, coeffs_csv(sol), opt.force);
  return 0;
}

struct ContinueOptions {
  double r = 2.0;
  std::vector<int> ks = {1};
  int modes = 4096;
  int initial_modes = 256;
  double height_floor = 1e-3;
  int steps = 4000;
  double seed_eps = 0.01;
  double tol = 1e-10;
  std::string out = "branch.jsonl";
  bool force = false;
  int jobs = 1;
};

int run_continue(const ContinueOptions& opt) {
  if (opt.ks.size() > 1 && opt.out.find("{k}") == std::string::npos) {
    log(LogLevel::error, "multiple --k values need an --out pattern containing {k}");
    return 2;
  }
  std::vector<int> status(opt.ks.size(), 0);
  std::vector<std::string> summaries(opt.ks.size());

  auto run_one = [&](size_t idx) {
    const int k = opt.ks[idx];
    try {
      ContinuationConfig cfg;
      cfg.seed_eps = opt.seed_eps;
      cfg.initial_modes = std::min(opt.initial_modes, opt.modes);
      cfg.max_modes = opt.modes;
      cfg.height_floor = opt.height_floor;
      cfg.max_steps = opt.steps;
      cfg.newton.tol_residual = opt.tol;
      const KernelSpec spec(opt.r);
      Branch branch = continue_branch(opt.r, k, cfg, spec);
      if (branch.points.empty()) {
        summaries[idx] = "k=" + std::to_string(k) + ": seed solve failed";
        status[idx] = 1;
        return;
      }
      std::string path = opt.out;
      if (auto pos = path.find("{k}"); pos != std::string::npos) {
        path.replace(pos, 3, std::to_string(k));
      }
      save_branch(branch, make_manifest(branch, cfg), path, opt.force);
      std::ostringstream os;
      os.precision(10);
      os << "k=" << k << ": " << branch.points.size() << " points, terminal mu "
         << branch.points.back().solution.mu << ", height "
         << branch.points.back().height << ", termination "
         << to_string(branch.termination) << ", wrote " << path;
      if (branch.points.size() >= 3) {
        const auto rev = detect_turning_or_revisit(branch);
        if (rev.revisit_flagged) os << " [revisit flagged]";
        if (rev.trivial_line_flagged) os << " [trivial-line flagged]";
      }
      summaries[idx] = os.str();
    } catch (const std::exception& e) {
      summaries[idx] = "k=" + std::to_string(k) + ": " + e.what();
      status[idx] = 1;
    }
  };

  const size_t jobs = std::min(static_cast<size_t>(std::max(1, opt.jobs)), opt.ks.size());
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < opt.ks.size(); i = next.fetch_add(1)) run_one(i);
    });
  }
  for (auto& t : pool) t.join();

  int rc = 0;
  for (size_t i = 0; i < opt.ks.size(); ++i) {
    std::cout << summaries[i] << "\n";
    rc = std::max(rc, status[i]);
  }
  return rc;
}

json regularity_to_json(const RegularityFit& f) {
  return json{{"alpha", f.alpha},       {"lip_constant", f.lip_constant},
              {"x_min", f.x_min},       {"x_max", f.x_max},
              {"fit_rms", f.fit_rms},   {"regime", f.regime}};
}

json regularity_to_json(const std::optional<RegularityFit>& f) {
  return f ? regularity_to_json(*f) : json(nullptr);
}

struct DiagnoseOptions {
  std::string in;
  std::string out = "report.json";
  bool force = false;
};

int run_diagnose(const DiagnoseOptions& opt) {
  auto [branch, manifest] = load_branch(opt.in);
  const KernelSpec spec(manifest.r);
  const auto ctx = make_apriori_context(spec);

  json points = json::array();
  bool all_passed = true;
  for (size_t i = 0; i < branch.points.size(); ++i) {
    const auto& p = branch.points[i];
    const auto rep = check_apriori(p.solution, spec, ctx);
    all_passed = all_passed && rep.all_passed();
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name}, {"satisfied", c.satisfied}, {"margin", c.margin}});
    }
    points.push_back({{"index", i},
                      {"mu", p.solution.mu},
                      {"height", p.height},
                      {"residual", p.solution.residual_norm},
                      {"checks", std::move(checks)},
                      {"regularity", regularity_to_json(rep.regularity)}});
  }

  json report{{"branch", opt.in},
              {"r", manifest.r},
              {"k", manifest.k},
              {"kernel_norms",
               {{"k_l1", ctx.l1.k_l1},
                {"k_prime_l1", ctx.l1.k_prime_l1},
                {"k_l1_normalized", ctx.l1.k_l1_normalized},
                {"k_prime_l1_normalized", ctx.l1.k_prime_l1_normalized},
                {"sign_change", ctx.l1.sign_change},
                {"lambda", ctx.lambda}}},
              {"points", std::move(points)},
              {"all_passed", all_passed}};
  if (branch.points.size() >= 3) {
    const auto rev = detect_turning_or_revisit(branch);
    report["revisit"] = {{"revisit_flagged", rev.revisit_flagged},
                         {"trivial_line_flagged", rev.trivial_line_flagged}};
  }
  if (manifest.r == 2.0) {
    const auto win = check_speed_window(branch);
    report["speed_window"] = {{"lower", win.lower},
                              {"upper", win.upper},
                              {"mu_min", win.mu_min},
                              {"mu_max", win.mu_max},
                              {"violations", win.violations},
                              {"all_inside", win.all_inside},
                              {"terminal_extrapolated", win.terminal_extrapolated},
                              {"terminal_within", win.terminal_within}};
  }
  emit(report.dump(2) + "\n", opt.out, opt.force);
  return all_passed ? 0 : 1;
}

struct OstrovskyOptions {
  std::string branch_path;
  std::string out = "report.json";
  int modes_low = 1024;
  int modes_high = 4096;
  bool deep = false;
  bool force = false;
};

int run_ostrovsky_verify(const OstrovskyOptions& opt) {
  json report;
  bool ok = true;
  auto record = [&](const std::string& name, bool pass, json detail) {
    detail["pass"] = pass;
    report[name] = std::move(detail);
    ok = ok && pass;
  };

  // Exact values and the shift identity between the two normalizations.
  {
    const double crest = peaked_wave_value(0.0);
    const double trough = peaked_wave_value(kPi);
    double shift_defect = 0.0;
    for (double x : {0.0, kPi / 3.0, kPi / 2.0, 2.0, kPi}) {
      shift_defect = std::max(shift_defect,
                              std::abs(peaked_wave_value(x) -
                                       peaked_wave_value_crest_at_pi(x - kPi)));
    }
    record("exact_wave", std::abs(crest - peaked_wave_speed()) < 1e-14 &&
                             std::abs(trough + kPi * kPi / 18.0) < 1e-14 &&
                             shift_defect < 1e-13,
           {{"crest", crest}, {"trough", trough}, {"shift_defect", shift_defect}});
  }

  // Nonlocal residual decay of the sampled peaked wave.
  {
    const double res_low = verify_nonlocal_residual(opt.modes_low);
    const double res_high = verify_nonlocal_residual(opt.modes_high);
    const bool pass = res_low <= 10.0 / opt.modes_low && res_high <= 10.0 / opt.modes_high &&
                      res_high <= 0.3 * res_low;
    record("nonlocal_residual", pass,
           {{"modes_low", opt.modes_low},
            {"residual_low", res_low},
            {"modes_high", opt.modes_high},
            {"residual_high", res_high}});
  }

  const KernelSpec spec(2.0);

  // Local form against the nonlocal form on a smooth solved wave.
  {
    NewtonConfig cfg;
    cfg.tol_residual = 1e-11;
    cfg.constraint = Constraint::FirstCoeff(0.05);
    auto res = newton_solve(asymptotic_seed(2.0, 1, 0.05, 512), cfg, spec);
    const double nonlocal = res.solution.residual_norm;
    const double local = verify_local_form(res.solution);
    record("local_form", res.converged && local <= 100.0 * std::max(nonlocal, 1e-13),
           {{"nonlocal", nonlocal}, {"local", local}});
  }

  // Kernel identity: closed-form convolution reproduces the multiplier.
  {
    auto sol = peaked_wave_sample(512);
    const auto conv = convolve_kernel(sol.phi, spec);
    const auto mult = apply_multiplier(sol.phi, 2.0);
    Eigen::VectorXd diff = conv.values() - mult.values();
    const double gap = diff.cwiseAbs().maxCoeff();
    record("kernel_identity", gap < 2e-2, {{"sup_gap", gap}});
  }

  // Crest regularity of the exact wave.
  {
    const auto fit = crest_regularity_fit(peaked_wave_sample(opt.modes_high));
    record("crest_regularity", fit.alpha > 0.98 && fit.alpha < 1.02 &&
                                   std::abs(fit.lip_constant - kPi / 3.0) < 0.1,
           regularity_to_json(fit));
  }

  // Branch checks: speed window, uniqueness proxy, terminal crest slope.
  {
    Branch branch;
    double floor_used = 0.0;
    if (!opt.branch_path.empty()) {
      auto [loaded, manifest] = load_branch(opt.branch_path);
      branch = std::move(loaded);
      floor_used = manifest.height_floor;
    } else {
      ContinuationConfig cfg;
      cfg.height_floor = opt.deep ? 1e-3 : 0.05;
      cfg.max_modes = opt.deep ? 4096 : 1024;
      floor_used = cfg.height_floor;
      branch = continue_branch(2.0, 1, cfg, spec);
    }
    if (branch.points.empty()) {
      record("branch", false, {{"error", "no branch points"}});
    } else {
      const auto win = check_speed_window(branch);
      const auto& last = branch.points.back().solution;
      double sup_dist = 0.0;
      const Eigen::VectorXd x = PeriodicFunction::grid(last.phi.modes());
      for (int j = 0; j < last.phi.modes(); ++j) {
        sup_dist = std::max(sup_dist, std::abs(last.phi.values()[j] - peaked_wave_value(x[j])));
      }
      const bool unique_ok = sup_dist <= 10.0 * floor_used;
      json detail{{"points", branch.points.size()},
                  {"height_floor", floor_used},
                  {"mu_range", {win.mu_min, win.mu_max}},
                  {"window", {win.lower, win.upper}},
                  {"all_inside", win.all_inside},
                  {"terminal_extrapolated", win.terminal_extrapolated},
                  {"sup_distance_to_peaked", sup_dist}};
      bool pass = win.all_inside && unique_ok;
      if (floor_used <= 5e-3) {
        const auto fit = crest_regularity_fit(last);
        const double slope = crest_slope_estimate(last);
        const bool slope_ok = std::abs(slope - kPi / 3.0) < 0.05 * (kPi / 3.0);
        detail["terminal_crest_slope"] = slope;
        detail["terminal_alpha"] = fit.alpha;
        detail["terminal_within_2pct"] = win.terminal_within;
        pass = pass && win.terminal_within && slope_ok;
      }
      record("branch", pass, std::move(detail));
    }
  }

  report["all_passed"] = ok;
  emit(report.dump(2) + "\n", opt.out, opt.force);
  return ok ? 0 : 1;
}

struct ExportOptions {
  std::string in;
  std::string out_dir = "profiles";
  bool coeffs = false;
};

int run_export(const ExportOptions& opt) {
  auto [branch, manifest] = load_branch(opt.in);
  (void)manifest;
  export_profiles(branch, opt.out_dir, opt.coeffs);
  std::cout << "exported " << branch.points.size() << " profiles to " << opt.out_dir << "\n";
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Spectral solver and continuation engine for peaked periodic traveling waves"};
  app.set_config("--config", "", "line-oriented key=value configuration file");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "parallel workers for independent (r,k) runs")
      ->check(CLI::PositiveNumber);

  KernelOptions kopt;
  auto* kernel_cmd = app.add_subcommand("kernel", "tabulate the convolution kernel as CSV");
  kernel_cmd->add_option("--r", kopt.r, "symbol order")->required()->check(kSymbolOrder);
  kernel_cmd->add_option("--terms", kopt.terms, "series truncation")->check(CLI::PositiveNumber);
  kernel_cmd->add_option("--grid", kopt.grid, "number of abscissae")->check(CLI::PositiveNumber);
  kernel_cmd->add_option("--method", kopt.method)
      ->check(CLI::IsMember({"series", "closed", "gamma", "all"}));
  kernel_cmd->add_option("--out", kopt.out, "output CSV path (stdout when absent)");
  kernel_cmd->add_flag("--force", kopt.force, "overwrite existing output");

  SolveOptions sopt;
  auto* solve_cmd = app.add_subcommand("solve", "Newton solve of the steady equation");
  solve_cmd->add_option("--r", sopt.r)->required()->check(kSymbolOrder);
  solve_cmd->add_option("--k", sopt.k, "symmetry fold")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--modes", sopt.modes)->check(CLI::PositiveNumber);
  auto* mu_opt = solve_cmd->add_option("--mu", sopt.mu, "fixed wave speed");
  auto* eps_opt = solve_cmd->add_option("--eps", sopt.eps, "fixed first-harmonic coefficient");
  auto* h_opt = solve_cmd->add_option("--height", sopt.height, "fixed height mu - phi(0)");
  mu_opt->excludes(eps_opt)->excludes(h_opt);
  eps_opt->excludes(h_opt);
  solve_cmd->add_option("--tol", sopt.tol)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iters", sopt.max_iters)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", sopt.out, "profile CSV path");
  solve_cmd->add_option("--coeffs-out", sopt.coeffs_out, "coefficient CSV path");
  solve_cmd->add_flag("--force", sopt.force);

  ContinueOptions copt;
  auto* cont_cmd = app.add_subcommand("continue", "continue a branch toward the highest wave");
  cont_cmd->add_option("--r", copt.r)->required()->check(kSymbolOrder);
  cont_cmd->add_option("--k", copt.ks, "symmetry fold(s)")->check(CLI::PositiveNumber);
  cont_cmd->add_option("--modes", copt.modes, "mode-escalation cap")->check(CLI::PositiveNumber);
  cont_cmd->add_option("--initial-modes", copt.initial_modes)->check(CLI::PositiveNumber);
  cont_cmd->add_option("--height-floor", copt.height_floor)->check(CLI::PositiveNumber);
  cont_cmd->add_option("--steps", copt.steps, "maximum accepted points")
      ->check(CLI::PositiveNumber);
  cont_cmd->add_option("--eps", copt.seed_eps, "seed amplitude")->check(CLI::PositiveNumber);
  cont_cmd->add_option("--tol", copt.tol)->check(CLI::PositiveNumber);
  cont_cmd->add_option("--out", copt.out, "branch JSONL path ({k} substituted)");
  cont_cmd->add_flag("--force", copt.force);

  DiagnoseOptions dopt;
  auto* diag_cmd = app.add_subcommand("diagnose", "a priori checks over a stored branch");
  diag_cmd->add_option("--in", dopt.in, "branch JSONL path")->required();
  diag_cmd->add_option("--out", dopt.out, "report JSON path");
  diag_cmd->add_flag("--force", dopt.force);

  OstrovskyOptions oopt;
  auto* ost_cmd = app.add_subcommand("ostrovsky", "reduced Ostrovsky (r = 2) specialization");
  auto* verify_cmd = ost_cmd->add_subcommand("verify", "run the r = 2 verification suite");
  verify_cmd->add_option("--branch", oopt.branch_path, "use a stored branch for the window checks");
  verify_cmd->add_option("--out", oopt.out, "report JSON path");
  verify_cmd->add_option("--modes-low", oopt.modes_low)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--modes-high", oopt.modes_high)->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--deep", oopt.deep, "run the internal branch to the 1e-3 height floor");
  verify_cmd->add_flag("--force", oopt.force);
  ost_cmd->require_subcommand(1);

  ExportOptions eopt;
  auto* export_cmd = app.add_subcommand("export", "convert a branch JSONL to profile CSVs");
  export_cmd->add_option("--in", eopt.in)->required();
  export_cmd->add_option("--out-dir", eopt.out_dir);
  export_cmd->add_flag("--coeffs", eopt.coeffs, "also write coefficient CSVs");

  for (auto* sub : {kernel_cmd, solve_cmd, cont_cmd, diag_cmd, ost_cmd, export_cmd, verify_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return 2;
  }

  sopt.has_mu = mu_opt->count() > 0;
  sopt.has_eps = eps_opt->count() > 0;
  sopt.has_height = h_opt->count() > 0;
  copt.jobs = jobs;

  try {
    if (kernel_cmd->parsed()) return run_kernel(kopt);
    if (solve_cmd->parsed()) {
      if (!sopt.has_mu && !sopt.has_eps && !sopt.has_height) {
        std::cerr << "one of --mu, --eps, --height is required\n" << solve_cmd->help() << "\n";
        return 2;
      }
      return run_solve(sopt);
    }
    if (cont_cmd->parsed()) return run_continue(copt);
    if (diag_cmd->parsed()) return run_diagnose(dopt);
    if (ost_cmd->parsed()) return run_ostrovsky_verify(oopt);
    if (export_cmd->parsed()) return run_export(eopt);
  } catch (const std::exception& e) {
    log(LogLevel::error, e.what());
    return 1;
  }
  std::cerr << app.help() << "\n";
  return 2;
}

}  // namespace peakwave::cli
