#include "peakwave/ostrovsky.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace peakwave {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double peaked_wave_speed() { return kPi * kPi / 9.0; }

double peaked_wave_value(double x) {
  const double t = std::abs(std::remainder(x, 2.0 * kPi));
  return (3.0 * (t - kPi) * (t - kPi) - kPi * kPi) / 18.0;
}

double peaked_wave_value_crest_at_pi(double x) {
  const double t = std::remainder(x, 2.0 * kPi);
  return (3.0 * t * t - kPi * kPi) / 18.0;
}

WaveSolution peaked_wave_sample(int modes) {
  if (modes < 256) throw std::invalid_argument("peaked wave sampling needs at least 256 modes");
  auto phi = PeriodicFunction::sample(modes, peaked_wave_value);
  return make_solution(std::move(phi), peaked_wave_speed(), 1, 2.0);
}

double verify_nonlocal_residual(int modes) { return peaked_wave_sample(modes).residual_norm; }

double verify_local_form(const WaveSolution& sol) {
  const double height = sol.mu - sol.phi.crest_value();
  if (height < 0.05 * sol.mu) {
    throw std::domain_error(
        "local-form check refused on a near-peaked wave; the corner cannot be differentiated "
        "spectrally");
  }
  const auto [sq, mean] = square_dealiased(sol.phi);
  (void)mean;
  const int half = sol.phi.modes() / 2;
  Eigen::VectorXd lc(half);
  for (int k = 1; k <= half; ++k) {
    const double q = 0.5 * sq.coeff(k) - sol.mu * sol.phi.coeff(k);
    lc[k - 1] = -static_cast<double>(k) * k * q - sol.phi.coeff(k);
  }
  return PeriodicFunction::from_coeffs(sol.phi.modes(), lc).sup_norm();
}

SpeedWindowReport check_speed_window(const Branch& branch, double terminal_rel_tol) {
  if (branch.r != 2.0) throw std::invalid_argument("speed window applies to r = 2 branches");
  if (branch.points.empty()) throw std::invalid_argument("empty branch");
  const double k2 = std::pow(static_cast<double>(branch.k), -2.0);
  SpeedWindowReport rep;
  rep.lower = k2;
  rep.upper = k2 * peaked_wave_speed();
  rep.mu_min = branch.points.front().solution.mu;
  rep.mu_max = rep.mu_min;
  for (const auto& p : branch.points) {
    const double mu = p.solution.mu;
    rep.mu_min = std::min(rep.mu_min, mu);
    rep.mu_max = std::max(rep.mu_max, mu);
    if (!(mu > rep.lower && mu < rep.upper)) ++rep.violations;
  }
  rep.all_inside = rep.violations == 0;
  rep.terminal_extrapolated = extrapolate_terminal_speed(branch).extrapolated;
  rep.terminal_within =
      std::abs(rep.terminal_extrapolated - rep.upper) <= terminal_rel_tol * rep.upper;
  return rep;
}

}  // namespace peakwave
