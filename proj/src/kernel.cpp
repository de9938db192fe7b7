#include "peakwave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "peakwave/quadrature.hpp"

namespace peakwave {
namespace {

constexpr double kPi = std::numbers::pi;

// Exact rational arithmetic for the Bernoulli recurrence.
struct Rat {
  long long num = 0;
  long long den = 1;

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(std::abs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  static Rat make(long long n, long long d) {
    Rat r{n, d};
    r.normalize();
    return r;
  }
  Rat operator+(const Rat& o) const { return make(num * o.den + o.num * den, den * o.den); }
  Rat operator*(const Rat& o) const {
    const long long g1 = std::gcd(std::abs(num), o.den);
    const long long g2 = std::gcd(std::abs(o.num), den);
    return make((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
  }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// B_0 = 1; B_n(x) = n Int_0^x B_{n-1}(t) dt + b_n with Int_0^1 B_n = 0.
std::vector<Rat> bernoulli_rational(int n) {
  std::vector<Rat> poly = {Rat::make(1, 1)};
  for (int m = 1; m <= n; ++m) {
    std::vector<Rat> next(m + 1, Rat{});
    for (int k = 0; k < static_cast<int>(poly.size()); ++k) {
      next[k + 1] = poly[k] * Rat::make(m, k + 1);
    }
    Rat integral{};
    for (int k = 1; k <= m; ++k) integral = integral + next[k] * Rat::make(1, k + 1);
    next[0] = Rat::make(-integral.num, integral.den);
    poly = std::move(next);
  }
  return poly;
}

double reduce_to_period(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("kernel abscissa must be finite");
  return std::remainder(x, 2.0 * kPi);  // [-pi, pi]
}

double series_tail_bound(double r, int n) {
  return 2.0 * std::pow(static_cast<double>(n), 1.0 - r) / (r - 1.0);
}

// sum_{k=1}^inf k^-r with Euler-Maclaurin correction of the tail.
double zeta_em(double r) {
  thread_local double cached_r = 0.0;
  thread_local double cached_value = 0.0;
  if (cached_r == r) return cached_value;
  const int n = 2000;
  long double s = 0.0L;
  for (int k = n; k >= 1; --k) {
    s += std::pow(static_cast<long double>(k), -static_cast<long double>(r));
  }
  const double a = n + 1.0;
  const double am = std::pow(a, -r);
  const double tail = a * am / (r - 1.0) + 0.5 * am + r * am / (12.0 * a) -
                      r * (r + 1.0) * (r + 2.0) * am / (720.0 * a * a * a);
  cached_r = r;
  cached_value = static_cast<double>(s) + tail;
  return cached_value;
}

double eta_from_zeta(double r) { return (1.0 - std::pow(2.0, 1.0 - r)) * zeta_em(r); }

double gamma_integrand(double u, double r, double cosx) {
  const double lnu = -std::log(u);
  return std::pow(lnu, r - 1.0) * (cosx - u) / (u * u - 2.0 * u * cosx + 1.0);
}

const std::vector<long double>& series_weights(double r, int n) {
  thread_local double cached_r = 0.0;
  thread_local int cached_n = 0;
  thread_local std::vector<long double> weights;
  if (cached_r != r || cached_n != n) {
    weights.resize(static_cast<size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
      weights[static_cast<size_t>(k)] =
          std::pow(static_cast<long double>(k), -static_cast<long double>(r));
    }
    cached_r = r;
    cached_n = n;
  }
  return weights;
}

// d/dx of the Gamma representation; valid on the same abscissa range.
double gamma_derivative(const KernelSpec& spec, double x) {
  const double cosx = std::cos(x);
  const double sinx = std::sin(x);
  auto f = [&](double u) {
    const double d = u * u - 2.0 * u * cosx + 1.0;
    return std::pow(-std::log(u), spec.r - 1.0) * (1.0 - u * u) / (d * d);
  };
  auto q = quad::adaptive_gauss_kronrod(f, 0.0, 1.0, 1e-10, 1e-8, 200);
  return -2.0 / std::tgamma(spec.r) * sinx * q.value;
}

}  // namespace

KernelSpec::KernelSpec(double r_, int series_cap_, int quadrature_points_)
    : r(r_), series_cap(series_cap_), quadrature_points(quadrature_points_) {
  if (!(r > 1.0)) throw std::invalid_argument("kernel symbol order r must exceed 1");
  if (series_cap < 16) throw std::invalid_argument("series_cap must be at least 16");
  if (quadrature_points < 1) throw std::invalid_argument("quadrature_points must be positive");
}

std::vector<double> bernoulli_polynomial(int n) {
  if (n < 0 || n > 12) throw std::invalid_argument("Bernoulli polynomials available up to B_12");
  const auto rat = bernoulli_rational(n);
  std::vector<double> out(rat.size());
  for (size_t i = 0; i < rat.size(); ++i) out[i] = rat[i].to_double();
  return out;
}

KernelEval kernel_series_eval(const KernelSpec& spec, double x) {
  const double xr = reduce_to_period(x);
  const long double t = std::abs(static_cast<long double>(xr));
  const auto& w = series_weights(spec.r, spec.series_cap);
  // cos((k+1)t) = 2 cos(t) cos(kt) - cos((k-1)t)
  const long double two_c = 2.0L * std::cos(t);
  long double prev = 1.0L;
  long double cur = std::cos(t);
  long double s = 0.0L;
  for (int k = 1; k <= spec.series_cap; ++k) {
    s += w[static_cast<size_t>(k)] * cur;
    const long double next = two_c * cur - prev;
    prev = cur;
    cur = next;
  }
  return {xr, 2.0 * static_cast<double>(s), series_tail_bound(spec.r, spec.series_cap)};
}

bool kernel_closed_form_available(double r) {
  if (r < 2.0 || r > 12.0) return false;
  const double rounded = std::round(r);
  return std::abs(r - rounded) < 1e-12 && std::llround(rounded) % 2 == 0;
}

double kernel_closed_form(double r, double x) {
  if (!kernel_closed_form_available(r)) {
    throw std::invalid_argument("closed form requires an even integer r in [2, 12]");
  }
  const int order = static_cast<int>(std::llround(r));
  const int n = order / 2;
  const double t = std::abs(reduce_to_period(x));  // [0, pi]
  const auto poly = bernoulli_polynomial(order);
  const double y = t / (2.0 * kPi);
  double p = 0.0;
  for (int k = static_cast<int>(poly.size()) - 1; k >= 0; --k) p = p * y + poly[k];
  double scale = 1.0;  // (2 pi)^{2n} / (2n)!
  for (int i = 1; i <= order; ++i) scale *= 2.0 * kPi / i;
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return sign * scale * p;
}

double kernel_gamma_cutoff() { return kPi / 64.0; }

double kernel_gamma_integral(const KernelSpec& spec, double x) {
  const double t = std::abs(reduce_to_period(x));
  if (t < kernel_gamma_cutoff()) {
    throw std::domain_error("Gamma-integral evaluation refused below x = pi/64; use the series");
  }
  const double cosx = std::cos(t);
  auto f = [&](double u) { return gamma_integrand(u, spec.r, cosx); };
  auto q = quad::adaptive_gauss_kronrod(f, 0.0, 1.0, 1e-12, 1e-10,
                                        std::max(spec.quadrature_points, 64));
  if (!q.converged && q.error > 1e-7) {
    throw std::runtime_error("Gamma-integral quadrature did not converge (error estimate " +
                             std::to_string(q.error) + ")");
  }
  return 2.0 / std::tgamma(spec.r) * q.value;
}

KernelEval kernel_eval_best(const KernelSpec& spec, double x) {
  const double xr = reduce_to_period(x);
  const double t = std::abs(xr);
  if (kernel_closed_form_available(spec.r)) {
    return {xr, kernel_closed_form(spec.r, t), 1e-13 * std::max(1.0, kernel_value_at_zero(spec))};
  }
  if (t == 0.0) return {xr, kernel_value_at_zero(spec), 1e-12};
  if (t >= kernel_gamma_cutoff()) return {xr, kernel_gamma_integral(spec, t), 1e-8};
  return kernel_series_eval(spec, t);
}

double kernel_value_at_zero(const KernelSpec& spec) { return 2.0 * zeta_em(spec.r); }

double kernel_value_at_pi(const KernelSpec& spec) { return -2.0 * eta_from_zeta(spec.r); }

KernelL1Norms kernel_l1_norms(const KernelSpec& spec) {
  // K_r decreases from K_r(0) > 0 to K_r(pi) < 0, so it has one zero in (0, pi).
  double lo = 1e-3, hi = kPi;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kernel_eval_best(spec, mid).value > 0.0 ? lo : hi) = mid;
  }
  const double x0 = 0.5 * (lo + hi);

  auto eval = [&](double x) { return kernel_eval_best(spec, x).value; };
  const int budget = std::max(spec.quadrature_points, 64);
  auto pos = quad::adaptive_gauss_kronrod(eval, 0.0, x0, 1e-10, 1e-10, budget);
  auto neg = quad::adaptive_gauss_kronrod(eval, x0, kPi, 1e-10, 1e-10, budget);
  if (!pos.converged || !neg.converged) {
    throw std::runtime_error("kernel L1 quadrature did not converge (error estimates " +
                             std::to_string(pos.error) + ", " + std::to_string(neg.error) + ")");
  }
  const double k_l1 = 2.0 * (pos.value - neg.value);

  // K_r' <= 0 on (0, pi): the |K_r'| integral telescopes to K_r(0) - K_r(pi).
  const double k0 = kernel_value_at_zero(spec);
  const double kpi = kernel_value_at_pi(spec);
  const double k_prime_l1 = 2.0 * (k0 - kpi);

  // Consistency check of the telescoped value against quadrature of the
  // differentiated representation (closed form when available, else Gamma).
  const double cut = kernel_gamma_cutoff();
  std::function<double(double)> dabs;
  if (kernel_closed_form_available(spec.r)) {
    const double h = 1e-6;
    dabs = [&, h](double x) {
      return std::abs(kernel_closed_form(spec.r, x + h) - kernel_closed_form(spec.r, x - h)) /
             (2.0 * h);
    };
  } else {
    dabs = [&](double x) { return std::abs(gamma_derivative(spec, x)); };
  }
  auto dq = quad::adaptive_gauss_kronrod(dabs, cut, kPi, 1e-7, 1e-7, std::min(budget, 200));
  const double head = k0 - kernel_eval_best(spec, cut).value;
  const double cross = 2.0 * (head + dq.value);
  const double cross_err = 2.0 * (dq.error + 2e-8) + 1e-4 * k_prime_l1;
  if (std::abs(cross - k_prime_l1) > std::max(1e-6, cross_err)) {
    throw std::runtime_error("kernel derivative L1 cross-check failed: telescoped " +
                             std::to_string(k_prime_l1) + " vs quadrature " +
                             std::to_string(cross));
  }

  KernelL1Norms out;
  out.k_l1 = k_l1;
  out.k_prime_l1 = k_prime_l1;
  out.k_l1_normalized = k_l1 / (2.0 * kPi);
  out.k_prime_l1_normalized = k_prime_l1 / (2.0 * kPi);
  out.sign_change = x0;
  out.error_estimate = 2.0 * (pos.error + neg.error) + std::abs(cross - k_prime_l1);
  if (!kernel_closed_form_available(spec.r)) {
    // Below the Gamma cutoff |K_r| integrates series values; charge their tail.
    out.error_estimate += 2.0 * cut * series_tail_bound(spec.r, spec.series_cap);
  }
  return out;
}

CompleteMonotonicityReport check_complete_monotonicity(double r, int n_max, int k_max) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  std::vector<double> mu(static_cast<size_t>(k_max + n_max + 1));
  for (size_t j = 0; j < mu.size(); ++j) mu[j] = std::pow(static_cast<double>(j + 1), -r);
  return check_complete_monotonicity_sequence(mu, n_max, k_max, 1e-12 * std::abs(mu[0]));
}

CompleteMonotonicityReport check_complete_monotonicity_sequence(const std::vector<double>& mu,
                                                                int n_max, int k_max,
                                                                double tol_base) {
  if (n_max > 20) throw std::invalid_argument("difference order limited to 20 by conditioning");
  if (static_cast<int>(mu.size()) < k_max + n_max + 1) {
    throw std::invalid_argument("sequence too short for requested orders");
  }
  CompleteMonotonicityReport rep{true, 0, 0, mu[0], tol_base};
  std::vector<double> diff(mu.begin(), mu.end());
  double sign = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double tol = tol_base * std::ldexp(1.0, n);  // roundoff grows ~2^n
    for (int k = 0; k <= k_max; ++k) {
      const double v = sign * diff[static_cast<size_t>(k)];
      if (v < rep.worst_value) {
        rep.worst_value = v;
        rep.worst_order = n;
        rep.worst_index = k;
        rep.tolerance_at_worst = tol;
      }
      if (v < -tol) rep.completely_monotonic = false;
    }
    for (size_t k = 0; k + 1 < diff.size(); ++k) diff[k] = diff[k + 1] - diff[k];
    diff.pop_back();
    sign = -sign;
  }
  return rep;
}

MonotonicityReport check_monotone_decreasing(const KernelSpec& spec, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");
  // The grid stays inside [pi/64, pi), the range where every order r > 1 has
  // an accurate evaluation path; below the cutoff the series tail can drown
  // the margins for r near 1.
  const double lo = kernel_gamma_cutoff();
  std::vector<double> xs(static_cast<size_t>(grid_size));
  std::vector<double> vals(xs.size()), errs(xs.size());
  for (int i = 0; i < grid_size; ++i) {
    xs[static_cast<size_t>(i)] = lo + (kPi - lo) * (i + 0.5) / (grid_size + 1.0);
    const auto e = kernel_eval_best(spec, xs[static_cast<size_t>(i)]);
    vals[static_cast<size_t>(i)] = e.value;
    errs[static_cast<size_t>(i)] = e.tail_bound;
  }
  return check_monotone_decreasing_values(xs, vals, errs);
}

MonotonicityReport check_monotone_decreasing_values(const std::vector<double>& xs,
                                                    const std::vector<double>& values,
                                                    const std::vector<double>& errors) {
  if (xs.size() != values.size() || xs.size() != errors.size() || xs.size() < 2) {
    throw std::invalid_argument("mismatched or too-short monotonicity inputs");
  }
  MonotonicityReport rep{MonotoneVerdict::decreasing, std::numeric_limits<double>::infinity(), 0.0,
                         0.0};
  bool some_indeterminate = false;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    const double margin = values[i] - values[i + 1];
    const double band = errors[i] + errors[i + 1];
    rep.eval_error = std::max(rep.eval_error, band);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_x = xs[i];
    }
    if (margin < -band) {
      rep.verdict = MonotoneVerdict::not_decreasing;
      return rep;
    }
    if (margin <= band) some_indeterminate = true;
  }
  if (some_indeterminate) rep.verdict = MonotoneVerdict::indeterminate;
  return rep;
}

LambdaBox lambda_box_constant(const KernelSpec& spec, int grid) {
  if (grid < 8) throw std::invalid_argument("lambda grid too coarse");
  const double delta = 0.5 * kPi / grid;

  // Node values along the two diagonals of the box. x - y = (i-j) delta and
  // x + y = -3pi/2 + (i+j) delta for node indices i, j in [0, grid].
  std::vector<double> k_diff(static_cast<size_t>(grid) + 1), k_diff_err(k_diff.size());
  for (int d = 0; d <= grid; ++d) {
    const auto e = kernel_eval_best(spec, d * delta);
    k_diff[static_cast<size_t>(d)] = e.value;
    k_diff_err[static_cast<size_t>(d)] = e.tail_bound;
  }
  std::vector<double> k_sum(2 * static_cast<size_t>(grid) + 1), k_sum_err(k_sum.size());
  for (int t = 0; t <= 2 * grid; ++t) {
    const double s = -1.5 * kPi + t * delta;
    const double theta = kPi - std::abs(s + kPi);  // reduced angle of x + y
    const auto e = kernel_eval_best(spec, theta);
    k_sum[static_cast<size_t>(t)] = e.value;
    k_sum_err[static_cast<size_t>(t)] = e.tail_bound;
  }

  double certified = std::numeric_limits<double>::infinity();
  double plain = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      // Cell lower bound: K is decreasing in the reduced angle, so take the
      // corner maximizing |x-y| and the corner minimizing the reduced |x+y|.
      const int dmax = std::max(std::abs(i - j + 1), std::abs(i - j - 1));
      const size_t tmin_idx = [&] {
        const int t0 = i + j, t1 = i + j + 2;
        const double th0 = kPi - std::abs(-0.5 * kPi + t0 * delta);
        const double th1 = kPi - std::abs(-0.5 * kPi + t1 * delta);
        return static_cast<size_t>(th0 < th1 ? t0 : t1);
      }();
      const double lb = (k_diff[static_cast<size_t>(dmax)] - k_diff_err[static_cast<size_t>(dmax)]) -
                        (k_sum[tmin_idx] + k_sum_err[tmin_idx]);
      certified = std::min(certified, lb);
      plain = std::min(plain, k_diff[static_cast<size_t>(std::abs(i - j))] -
                                  k_sum[static_cast<size_t>(i + j)]);
    }
  }
  LambdaBox out{0.5 * certified, 0.5 * plain, grid};
  if (!(out.lambda > 0.0)) {
    throw std::runtime_error("lambda box bound is not positive; kernel evaluation inconsistency");
  }
  return out;
}

}  // namespace peakwave
