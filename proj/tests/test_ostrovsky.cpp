#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "peakwave/continuation.hpp"
#include "peakwave/diagnostics.hpp"
#include "peakwave/kernel.hpp"
#include "peakwave/ostrovsky.hpp"
#include "peakwave/solver.hpp"

using namespace peakwave;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("peaked wave pointwise values") {
  CHECK(peaked_wave_speed() == doctest::Approx(kPi * kPi / 9.0).epsilon(1e-15));
  CHECK(peaked_wave_value(0.0) == doctest::Approx(kPi * kPi / 9.0).epsilon(1e-15));
  CHECK(peaked_wave_value(kPi) == doctest::Approx(-kPi * kPi / 18.0).epsilon(1e-15));
  CHECK(peaked_wave_value(-kPi) == doctest::Approx(-kPi * kPi / 18.0).epsilon(1e-15));

  // One-sided slopes at the crest are -pi/3 and +pi/3.
  const double h = 1e-9;
  CHECK((peaked_wave_value(h) - peaked_wave_value(0.0)) / h ==
        doctest::Approx(-kPi / 3.0).epsilon(1e-6));
  CHECK((peaked_wave_value(0.0) - peaked_wave_value(-h)) / h ==
        doctest::Approx(kPi / 3.0).epsilon(1e-6));

  // Mean over the period vanishes (analytically; trapezoid check).
  const int n = 1 << 16;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += peaked_wave_value(-kPi + 2.0 * kPi * i / n);
  CHECK(std::abs(sum / n) < 1e-9);
}

TEST_CASE("shift identity between the two crest normalizations") {
  for (double x : {0.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0, 1.1, kPi}) {
    CHECK(peaked_wave_value(x) ==
          doctest::Approx(peaked_wave_value_crest_at_pi(x - kPi)).epsilon(1e-14));
    CHECK(peaked_wave_value(-x) == doctest::Approx(peaked_wave_value(x)).epsilon(1e-14));
  }
  CHECK(peaked_wave_value_crest_at_pi(kPi / 2.0) ==
        doctest::Approx((3.0 * kPi * kPi / 4.0 - kPi * kPi) / 18.0).epsilon(1e-14));
}

TEST_CASE("sampling the peaked wave") {
  CHECK_THROWS_AS(peaked_wave_sample(128), std::invalid_argument);
  auto sol = peaked_wave_sample(1024);
  CHECK(sol.mu == doctest::Approx(kPi * kPi / 9.0));
  CHECK(sol.symmetry == 1);
  CHECK(sol.phi.crest_value() == doctest::Approx(kPi * kPi / 9.0).epsilon(1e-5));
  // Cosine coefficients of the peaked wave are (2/3) k^-2.
  for (int k : {1, 2, 5, 16}) {
    CHECK(sol.phi.coeff(k) == doctest::Approx((2.0 / 3.0) / (k * k)).epsilon(1e-4));
  }
}

TEST_CASE("nonlocal residual of the sampled peaked wave decays") {
  const double res1024 = verify_nonlocal_residual(1024);
  const double res4096 = verify_nonlocal_residual(4096);
  CHECK(res1024 <= 1e-2);
  CHECK(res4096 <= 2.5e-3);
  CHECK(res4096 <= 0.25 * res1024);

  // Negative control: cos(x) at the peaked speed is far from a solution.
  auto bogus = residual(PeriodicFunction::sample(1024, [](double x) { return std::cos(x); }),
                        kPi * kPi / 9.0, 2.0);
  CHECK(bogus.sup_norm() > 0.1);
}

TEST_CASE("local form tracks the nonlocal form") {
  const KernelSpec spec(2.0);

  auto zero = make_solution(PeriodicFunction::zero(256), 0.5, 1, 2.0);
  CHECK(verify_local_form(zero) == 0.0);

  NewtonConfig cfg;
  cfg.tol_residual = 1e-11;
  cfg.constraint = Constraint::FirstCoeff(0.05);
  auto smooth = newton_solve(asymptotic_seed(2.0, 1, 0.05, 512), cfg, spec).solution;
  const double local = verify_local_form(smooth);
  CHECK(local <= 100.0 * std::max(smooth.residual_norm, 1e-13));

  // Unconverged seed: the defect stays at the seed's own order.
  auto seed = asymptotic_seed(2.0, 1, 0.01, 512);
  CHECK(verify_local_form(seed) <= 1.0 * 0.01 * 0.01);

  CHECK_THROWS_AS(verify_local_form(peaked_wave_sample(1024)), std::domain_error);
}

TEST_CASE("kernel identity: closed-form convolution equals the multiplier") {
  const KernelSpec spec(2.0);
  auto sol = peaked_wave_sample(512);
  auto conv = convolve_kernel(sol.phi, spec);
  auto mult = apply_multiplier(sol.phi, 2.0);
  CHECK((conv.values() - mult.values()).cwiseAbs().maxCoeff() < 2e-2);
}

TEST_CASE("speed window on short branches") {
  const KernelSpec spec(2.0);
  ContinuationConfig cfg;
  cfg.height_floor = 0.25;
  cfg.max_modes = 1024;
  auto branch = continue_branch(2.0, 1, cfg, spec);
  REQUIRE(branch.termination == BranchTermination::height_floor_reached);
  auto rep = check_speed_window(branch);
  CHECK(rep.lower == doctest::Approx(1.0));
  CHECK(rep.upper == doctest::Approx(kPi * kPi / 9.0).epsilon(1e-14));
  CHECK(rep.all_inside);
  CHECK(rep.violations == 0);
  CHECK(rep.mu_min > 1.0);
  CHECK(rep.mu_max < kPi * kPi / 9.0);

  ContinuationConfig cfg2 = cfg;
  cfg2.height_floor = 0.06;
  auto branch2 = continue_branch(2.0, 2, cfg2, spec);
  REQUIRE(branch2.termination == BranchTermination::height_floor_reached);
  auto rep2 = check_speed_window(branch2);
  CHECK(rep2.lower == doctest::Approx(0.25));
  CHECK(rep2.upper == doctest::Approx(kPi * kPi / 36.0).epsilon(1e-14));
  CHECK(rep2.all_inside);

  ContinuationConfig cfg3 = cfg;
  cfg3.height_floor = 0.03;
  cfg3.max_modes = 2048;
  auto branch3 = continue_branch(2.0, 3, cfg3, spec);
  REQUIRE(branch3.termination == BranchTermination::height_floor_reached);
  auto rep3 = check_speed_window(branch3);
  CHECK(rep3.lower == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(rep3.upper == doctest::Approx(kPi * kPi / 81.0).epsilon(1e-14));
  CHECK(rep3.all_inside);

  Branch wrong;
  wrong.r = 3.0;
  CHECK_THROWS_AS(check_speed_window(wrong), std::invalid_argument);
}
