#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "peakwave/quadrature.hpp"

using peakwave::quad::adaptive_gauss_kronrod;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("polynomial and trigonometric integrals") {
  auto q1 = adaptive_gauss_kronrod([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(q1.converged);
  CHECK(q1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  auto q2 = adaptive_gauss_kronrod([](double x) { return std::sin(x); }, 0.0, kPi);
  CHECK(q2.converged);
  CHECK(q2.value == doctest::Approx(2.0).epsilon(1e-13));

  auto q3 = adaptive_gauss_kronrod([](double x) { return std::cos(10.0 * x); }, 0.0, kPi / 2.0);
  CHECK(q3.converged);
  CHECK(q3.value == doctest::Approx(std::sin(5.0 * kPi) / 10.0).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularities") {
  // int_0^1 (-ln u) du = 1 and int_0^1 (-ln u)^2 du = 2
  auto q1 = adaptive_gauss_kronrod([](double u) { return -std::log(u); }, 0.0, 1.0, 1e-10, 1e-10);
  CHECK(q1.value == doctest::Approx(1.0).epsilon(1e-9));
  auto q2 = adaptive_gauss_kronrod([](double u) { return std::log(u) * std::log(u); }, 0.0, 1.0,
                                   1e-10, 1e-10);
  CHECK(q2.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("error estimate reflects the interval budget") {
  auto tight = adaptive_gauss_kronrod([](double u) { return -std::log(u); }, 0.0, 1.0, 1e-12,
                                      1e-12, 4);
  CHECK(!tight.converged);
  CHECK(std::abs(tight.value - 1.0) <= tight.error * 10.0);

  auto empty = adaptive_gauss_kronrod([](double) { return 1.0; }, 2.0, 2.0);
  CHECK(empty.converged);
  CHECK(empty.value == 0.0);
}
