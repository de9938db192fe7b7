#include "peakwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "peakwave/solver.hpp"

namespace peakwave {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

bool DiagnosticsReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LemmaCheck& c) { return c.satisfied; });
}

const LemmaCheck& DiagnosticsReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no diagnostics check named " + name);
}

AprioriContext make_apriori_context(const KernelSpec& spec) {
  // The norms depend only on r; memoize across branch points and calls.
  static std::mutex mutex;
  static std::map<double, AprioriContext> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(spec.r);
  if (it == cache.end()) {
    it = cache.emplace(spec.r,
                       AprioriContext{kernel_l1_norms(spec), lambda_box_constant(spec).lambda})
             .first;
  }
  return it->second;
}

DiagnosticsReport check_apriori(const WaveSolution& sol, const KernelSpec& spec) {
  return check_apriori(sol, spec, make_apriori_context(spec));
}

DiagnosticsReport check_apriori(const WaveSolution& sol, const KernelSpec& spec,
                                const AprioriContext& ctx) {
  DiagnosticsReport rep;
  const double mu = sol.mu;
  const double phi_max = sol.phi.max_value();
  const double phi_min = sol.phi.min_value();
  const double phi_inf = sol.phi.sup_norm();
  const double norm_k = ctx.l1.k_l1;
  const double norm_kp = ctx.l1.k_prime_l1;

  auto add = [&rep](std::string name, double margin) {
    rep.checks.push_back({std::move(name), margin >= 0.0, margin});
  };

  // 1. Max-plus-min distance to the speed.
  add("max_plus_min_vs_speed", (phi_max + phi_min) - 2.0 * (mu - norm_k));

  // 2. Gradient bound on (mu - phi)^2 via spectral differentiation of its
  //    dealiased zero-mean part.
  const auto [sq, sq_mean] = square_dealiased(sol.phi);
  (void)sq_mean;
  Eigen::VectorXd pc = sq.cos_coeffs() - 2.0 * mu * sol.phi.cos_coeffs();
  const auto p = PeriodicFunction::from_coeffs(sol.phi.modes(), pc);
  const double grad_max = derivative_values(p).cwiseAbs().maxCoeff();
  add("speed_gradient_bound", 2.0 * norm_kp * phi_inf - grad_max);

  // 3. Uniform bound on the amplitude.
  add("uniform_bound", 2.0 * (mu + norm_k) + 2.0 * kPi * norm_kp - phi_inf);

  // 4. Upper speed bound for nontrivial solutions.
  add("speed_upper_bound", 2.0 * norm_k - mu);

  // 5. Distance between trough and speed. The constant carries the kernel
  //    normalization (lambda / 2 for the 2pi-periodic wave) and the k-fold
  //    rescaling phi_k(x) = k^-r phi_1(kx).
  const double trough_gap = mu - sol.phi(kPi / sol.symmetry);
  add("trough_speed_distance",
      trough_gap - 0.5 * ctx.lambda * std::pow(static_cast<double>(sol.symmetry), -spec.r));

  try {
    rep.regularity = crest_regularity_fit(sol);
  } catch (const std::runtime_error&) {
    rep.regularity.reset();
  }
  return rep;
}

RegularityFit crest_regularity_fit(const WaveSolution& sol) {
  const int m = sol.phi.modes();
  return crest_regularity_fit_windowed(sol, 4.0 * (2.0 * kPi / m), kPi / (8.0 * sol.symmetry));
}

RegularityFit crest_regularity_fit_windowed(const WaveSolution& sol, double x_min, double x_max) {
  const int m = sol.phi.modes();
  const double height = sol.mu - sol.phi.crest_value();
  const bool near_limit = height < 0.05 * sol.mu;

  RegularityFit fit;
  fit.regime = near_limit ? "near_limit" : "smooth";
  fit.x_min = x_min;
  fit.x_max = x_max;

  const Eigen::VectorXd x = PeriodicFunction::grid(m);
  const Eigen::VectorXd& v = sol.phi.values();
  const double crest = sol.phi.crest_value();
  std::vector<double> lx, ly;
  for (int j = m / 2 + 1; j < m; ++j) {
    if (x[j] < fit.x_min || x[j] > fit.x_max) continue;
    const double deficit = near_limit ? sol.mu - v[j] : crest - v[j];
    if (deficit <= 0.0) continue;
    lx.push_back(std::log(x[j]));
    ly.push_back(std::log(deficit));
  }
  if (lx.size() < 6) {
    throw std::runtime_error("crest fit window holds fewer than 6 grid points; increase modes");
  }

  const auto n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  fit.alpha = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.alpha * sx) / n;
  fit.lip_constant = std::exp(intercept);
  double rss = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (intercept + fit.alpha * lx[i]);
    rss += e * e;
  }
  fit.fit_rms = std::sqrt(rss / n);
  return fit;
}

double crest_slope_estimate(const WaveSolution& sol) {
  const int k = sol.symmetry;
  const int n = (sol.phi.modes() / 2) / k;
  const double height = sol.mu - sol.phi.crest_value();

  // A corner of one-sided slope s at the crest puts a k^-2 plateau in the
  // coefficients: (pi/2) j^2 c_j / k -> s for k << j << (corner scale)^-1.
  // The plateau read-out is far less sensitive to the residual rounding of a
  // near-limit crest than physical-space secants are.
  if (height < 0.05 * sol.mu && n >= 16) {
    double sum = 0.0;
    int count = 0;
    for (int m = 8; m <= std::min(32, n / 2); ++m) {
      const int j = m * k;
      sum += 0.5 * kPi * j * j * sol.phi.coeff(j) / k;
      ++count;
    }
    return sum / count;
  }

  const int modes = sol.phi.modes();
  const Eigen::VectorXd x = PeriodicFunction::grid(modes);
  const double crest = sol.phi.crest_value();
  double sum = 0.0;
  int count = 0;
  for (int off = 8; off <= 16; ++off) {
    const int j = modes / 2 + off;
    if (j >= modes) break;
    sum += (crest - sol.phi.values()[j]) / x[j];
    ++count;
  }
  if (count == 0) throw std::runtime_error("grid too coarse for a crest slope estimate");
  return sum / count;
}

BifurcationFitReport verify_bifurcation_formulas(double r, int k,
                                                 const std::vector<double>& eps_list, int modes) {
  if (eps_list.size() < 4) throw std::invalid_argument("need at least 4 epsilon values");
  for (double e : eps_list) {
    if (!(e > 0.0 && e <= 0.05)) throw std::invalid_argument("eps values must lie in (0, 0.05]");
  }
  const KernelSpec spec(r);
  const double mu_star = std::pow(static_cast<double>(k), -r);
  const double kr = std::pow(static_cast<double>(k), r);
  const double denom = 1.0 - std::pow(2.0, -r);

  BifurcationFitReport rep;
  rep.r = r;
  rep.k = k;
  rep.mu2_predicted = kr / (8.0 * denom);
  rep.c2_predicted = kr / (4.0 * denom);
  rep.solves_converged = true;

  for (double eps : eps_list) {
    // Seed with the pure first harmonic so the solve does not presuppose the
    // second-order expansion it is meant to verify.
    Eigen::VectorXd c0 = Eigen::VectorXd::Zero(modes / 2);
    c0[k - 1] = eps;
    auto seed = make_solution(PeriodicFunction::from_coeffs(modes, c0), mu_star, k, r);
    NewtonConfig cfg;
    cfg.tol_residual = 1e-12;
    cfg.max_iters = 60;
    cfg.constraint = Constraint::FirstCoeff(eps);
    auto res = newton_solve(seed, cfg, spec);
    if (!res.converged) {
      rep.solves_converged = false;
      break;
    }
    rep.eps.push_back(eps);
    rep.mu_shift.push_back(res.solution.mu - mu_star);
    rep.second_harmonic.push_back(res.solution.phi.coeff(2 * k));
  }

  auto slope_through_origin = [](const std::vector<double>& x2, const std::vector<double>& y) {
    double num = 0, den = 0;
    for (size_t i = 0; i < x2.size(); ++i) {
      num += x2[i] * y[i];
      den += x2[i] * x2[i];
    }
    return num / den;
  };
  if (rep.solves_converged) {
    std::vector<double> eps2(rep.eps.size());
    for (size_t i = 0; i < rep.eps.size(); ++i) eps2[i] = rep.eps[i] * rep.eps[i];
    rep.mu2_regressed = slope_through_origin(eps2, rep.mu_shift);
    rep.c2_regressed = slope_through_origin(eps2, rep.second_harmonic);
  }
  return rep;
}

}  // namespace peakwave
