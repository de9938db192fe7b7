#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "peakwave/kernel.hpp"

using namespace peakwave;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kZeta32 = 2.612375348685488;  // zeta(3/2)

double closed_k2(double x) {
  x = std::abs(std::remainder(x, 2.0 * kPi));
  return 0.5 * (x - kPi) * (x - kPi) - kPi * kPi / 6.0;
}

double closed_k4(double x) {
  x = std::abs(std::remainder(x, 2.0 * kPi));
  const double t = x * x - 2.0 * kPi * x;
  return kPi * kPi * kPi * kPi / 45.0 - t * t / 24.0;
}
}  // namespace

TEST_CASE("kernel parameter validation") {
  CHECK_THROWS_AS(KernelSpec(1.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec(0.5), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec(2.0, 8), std::invalid_argument);
  CHECK_NOTHROW(KernelSpec(1.0000001, 16));
}

TEST_CASE("series evaluation against exact endpoint values") {
  const KernelSpec spec2(2.0);
  auto at0 = kernel_series_eval(spec2, 0.0);
  CHECK(at0.tail_bound == doctest::Approx(2e-4).epsilon(1e-12));
  CHECK(std::abs(at0.value - kPi * kPi / 3.0) <= at0.tail_bound);
  auto atpi = kernel_series_eval(spec2, kPi);
  CHECK(std::abs(atpi.value + kPi * kPi / 6.0) <= atpi.tail_bound);

  const KernelSpec spec4(4.0);
  auto at0r4 = kernel_series_eval(spec4, 0.0);
  CHECK(std::abs(at0r4.value - std::pow(kPi, 4) / 45.0) <= at0r4.tail_bound);

  // Evenness and period reduction.
  CHECK(kernel_series_eval(spec2, 1.2).value ==
        doctest::Approx(kernel_series_eval(spec2, -1.2).value).epsilon(1e-15));
  CHECK(kernel_series_eval(spec2, 1.2 + 2.0 * kPi).value ==
        doctest::Approx(kernel_series_eval(spec2, 1.2).value).epsilon(1e-15));
}

TEST_CASE("Bernoulli polynomials from the recurrence") {
  const auto b2 = bernoulli_polynomial(2);
  REQUIRE(b2.size() == 3);
  CHECK(b2[0] == doctest::Approx(1.0 / 6.0));
  CHECK(b2[1] == doctest::Approx(-1.0));
  CHECK(b2[2] == doctest::Approx(1.0));
  const auto b4 = bernoulli_polynomial(4);
  REQUIRE(b4.size() == 5);
  CHECK(b4[0] == doctest::Approx(-1.0 / 30.0));
  CHECK(b4[1] == doctest::Approx(0.0));
  CHECK(b4[2] == doctest::Approx(1.0));
  CHECK(b4[3] == doctest::Approx(-2.0));
  const auto b12 = bernoulli_polynomial(12);
  CHECK(b12[0] == doctest::Approx(-691.0 / 2730.0).epsilon(1e-15));
}

TEST_CASE("closed form matches the displayed r = 2 and r = 4 formulas") {
  for (double x : {0.0, 0.3, kPi / 2.0, 1.9, kPi}) {
    CHECK(kernel_closed_form(2.0, x) == doctest::Approx(closed_k2(x)).epsilon(1e-13));
    CHECK(kernel_closed_form(4.0, x) == doctest::Approx(closed_k4(x)).epsilon(1e-13));
  }
  CHECK(kernel_closed_form(2.0, kPi / 2.0) ==
        doctest::Approx(-kPi * kPi / 24.0).epsilon(1e-14));
  CHECK(kernel_closed_form(2.0, 0.0) == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-14));
  // pi^4/45 - pi^4/24 = -7 pi^4/360
  CHECK(kernel_closed_form(4.0, kPi) ==
        doctest::Approx(-7.0 * std::pow(kPi, 4) / 360.0).epsilon(1e-14));

  CHECK(kernel_closed_form_available(2.0));
  CHECK(kernel_closed_form_available(12.0));
  CHECK(!kernel_closed_form_available(3.0));
  CHECK(!kernel_closed_form_available(2.5));
  CHECK(!kernel_closed_form_available(14.0));
  CHECK_THROWS_AS(kernel_closed_form(3.0, 1.0), std::invalid_argument);
}

TEST_CASE("Gamma integral agrees with the closed form and the series") {
  const KernelSpec spec2(2.0);
  CHECK(std::abs(kernel_gamma_integral(spec2, kPi) + kPi * kPi / 6.0) < 1e-6);
  CHECK(std::abs(kernel_gamma_integral(spec2, kPi / 2.0) + kPi * kPi / 24.0) < 1e-6);
  CHECK_THROWS_AS(kernel_gamma_integral(spec2, kPi / 128.0), std::domain_error);

  // r = 3 at pi/3 against a long truncated series (oscillatory tail is tiny).
  const KernelSpec spec3(3.0, 100'000);
  const double series_ref = kernel_series_eval(spec3, kPi / 3.0).value;
  CHECK(std::abs(kernel_gamma_integral(spec3, kPi / 3.0) - series_ref) < 1e-7);

  const KernelSpec spec15(1.5, 200'000);
  const double series15 = kernel_series_eval(spec15, kPi / 8.0).value;
  CHECK(std::abs(kernel_gamma_integral(spec15, kPi / 8.0) - series15) < 1e-6);
}

TEST_CASE("cross-method agreement over the grid") {
  // 1e-14 covers double rounding of the two evaluations; at r = 4 the exact
  // truncation error sits only 1e-16 under the majorant at x = 0.
  for (double r : {2.0, 4.0}) {
    const KernelSpec spec(r);
    double worst = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double x = -kPi + 2.0 * kPi * i / 512;
      const auto e = kernel_series_eval(spec, x);
      worst = std::max(worst, std::abs(e.value - kernel_closed_form(r, x)));
      CHECK(std::abs(e.value - kernel_closed_form(r, x)) <= e.tail_bound + 1e-14);
    }
    CHECK(worst > 0.0);
  }
  // Series vs Gamma for a non-even order on [pi/8, pi].
  const KernelSpec spec(2.5);
  for (int i = 0; i <= 16; ++i) {
    const double x = kPi / 8.0 + (kPi - kPi / 8.0) * i / 16.0;
    const auto e = kernel_series_eval(spec, x);
    CHECK(std::abs(e.value - kernel_gamma_integral(spec, x)) <= e.tail_bound + 1e-6);
  }
}

TEST_CASE("truncation error shrinks at the expected rate") {
  const KernelSpec coarse(2.0, 1000);
  const KernelSpec fine(2.0, 2000);
  double gap_coarse = 0.0, gap_fine = 0.0;
  for (int i = 0; i < 256; ++i) {
    const double x = -kPi + 2.0 * kPi * i / 256;
    gap_coarse = std::max(gap_coarse,
                          std::abs(kernel_series_eval(coarse, x).value - closed_k2(x)));
    gap_fine = std::max(gap_fine, std::abs(kernel_series_eval(fine, x).value - closed_k2(x)));
  }
  CHECK(gap_coarse / gap_fine >= 1.8);
}

TEST_CASE("zero mean of the series kernel") {
  for (double r : {1.5, 2.0, 3.0}) {
    const KernelSpec spec(r);
    const int n = 1024;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += kernel_series_eval(spec, -kPi + 2.0 * kPi * i / n).value;
    }
    const double integral = sum * 2.0 * kPi / n;
    CHECK(std::abs(integral) <= kernel_series_eval(spec, 0.0).tail_bound * 2.0 * kPi);
  }
}

TEST_CASE("L1 norms for r = 2 against the analytic values") {
  const auto norms = kernel_l1_norms(KernelSpec(2.0));
  CHECK(norms.k_l1 == doctest::Approx(4.0 * std::pow(kPi, 3) / (9.0 * std::sqrt(3.0)))
                          .epsilon(1e-8));
  CHECK(norms.k_prime_l1 == doctest::Approx(kPi * kPi).epsilon(1e-10));
  CHECK(norms.k_l1_normalized == doctest::Approx(norms.k_l1 / (2.0 * kPi)).epsilon(1e-14));
  CHECK(norms.sign_change == doctest::Approx(kPi * (1.0 - 1.0 / std::sqrt(3.0))).epsilon(1e-9));
}

TEST_CASE("L1 norms for fractional order against zeta values") {
  const auto norms = kernel_l1_norms(KernelSpec(1.5));
  const double eta32 = (1.0 - std::pow(2.0, -0.5)) * kZeta32;
  CHECK(norms.k_prime_l1 == doctest::Approx(4.0 * (kZeta32 + eta32)).epsilon(1e-9));
  CHECK(norms.k_l1 > 0.0);
  CHECK(norms.sign_change > 0.0);
  CHECK(norms.sign_change < kPi);
}

TEST_CASE("complete monotonicity of the symbol sequence") {
  for (double r : {1.5, 2.0, 3.0, 4.0}) {
    const auto rep = check_complete_monotonicity(r, 10, 100);
    CHECK(rep.completely_monotonic);
  }
  CHECK_THROWS_AS(check_complete_monotonicity(2.0, 21, 10), std::invalid_argument);

  // Alternating injected sequence is not monotone.
  std::vector<double> alternating(40);
  for (size_t i = 0; i < alternating.size(); ++i) alternating[i] = (i % 2 == 0) ? 1.0 : -1.0;
  const auto rep = check_complete_monotonicity_sequence(alternating, 5, 20, 1e-12);
  CHECK(!rep.completely_monotonic);
}

TEST_CASE("kernel decreases on (0, pi)") {
  CHECK(check_monotone_decreasing(KernelSpec(2.0), 512).verdict ==
        MonotoneVerdict::decreasing);
  CHECK(check_monotone_decreasing(KernelSpec(1.1), 512).verdict ==
        MonotoneVerdict::decreasing);

  // Injected cos(2x) values on a grid in (0, pi) are not monotone.
  std::vector<double> xs, vals, errs;
  for (int i = 0; i < 64; ++i) {
    xs.push_back(kPi * (i + 1.0) / 65.0);
    vals.push_back(std::cos(2.0 * xs.back()));
    errs.push_back(0.0);
  }
  CHECK(check_monotone_decreasing_values(xs, vals, errs).verdict ==
        MonotoneVerdict::not_decreasing);

  // Margins inside the error band are never a pass.
  const auto ind = check_monotone_decreasing_values({1.0, 1.1}, {1.0, 0.999}, {0.01, 0.01});
  CHECK(ind.verdict == MonotoneVerdict::indeterminate);
}

TEST_CASE("lambda box constant") {
  const auto box2 = lambda_box_constant(KernelSpec(2.0));
  CHECK(box2.lambda > 0.0);
  CHECK(box2.lambda <= kPi * kPi / 4.0);  // bracket from K_2(0) - K_2(pi) at x = y = -pi/2
  // The exact minimum over the box is pi^2/8, hence lambda = pi^2/16.
  CHECK(box2.lambda == doctest::Approx(kPi * kPi / 16.0).epsilon(2e-2));
  CHECK(box2.lambda <= kPi * kPi / 16.0 + 1e-12);

  const auto coarse = lambda_box_constant(KernelSpec(2.0), 128);
  CHECK(std::abs(coarse.lambda - box2.lambda) < 0.01 * box2.lambda);

  CHECK(lambda_box_constant(KernelSpec(4.0)).lambda > 0.0);
  CHECK(lambda_box_constant(KernelSpec(1.5)).lambda > 0.0);
}
