#include "peakwave/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "peakwave/kernel.hpp"

namespace peakwave {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int m) { return m > 0 && (m & (m - 1)) == 0; }

void require_modes(int m) {
  if (!is_pow2(m) || m < 16) {
    throw std::invalid_argument("mode count must be a power of two and at least 16, got " +
                                std::to_string(m));
  }
}

Eigen::FFT<double>& fft() {
  thread_local Eigen::FFT<double> instance;
  return instance;
}

// On the grid x_j = -pi + 2pi j/M one has cos(k x_j) = (-1)^k cos(2pi kj/M),
// which produces the alternating signs below.
Eigen::VectorXd coeffs_from_values(const Eigen::VectorXd& v) {
  const int m = static_cast<int>(v.size());
  std::vector<double> buf(v.data(), v.data() + m);
  std::vector<std::complex<double>> spec;
  fft().fwd(spec, buf);
  Eigen::VectorXd c(m / 2);
  double sign = -1.0;
  for (int k = 1; k < m / 2; ++k) {
    c[k - 1] = 2.0 * sign * spec[static_cast<size_t>(k)].real() / m;
    sign = -sign;
  }
  c[m / 2 - 1] = spec[static_cast<size_t>(m / 2)].real() / m;  // M/2 is even for M >= 16
  return c;
}

Eigen::VectorXd values_from_coeffs(const Eigen::VectorXd& c) {
  const int m = 2 * static_cast<int>(c.size());
  std::vector<std::complex<double>> spec(static_cast<size_t>(m), {0.0, 0.0});
  double sign = -1.0;
  for (int k = 1; k < m / 2; ++k) {
    const double a = 0.5 * m * sign * c[k - 1];
    spec[static_cast<size_t>(k)] = {a, 0.0};
    spec[static_cast<size_t>(m - k)] = {a, 0.0};
    sign = -sign;
  }
  spec[static_cast<size_t>(m / 2)] = {static_cast<double>(m) * c[m / 2 - 1], 0.0};
  std::vector<double> buf;
  fft().inv(buf, spec);
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(buf.data(), m);
  // Exact symmetrization and mean removal of transform roundoff.
  for (int j = 1; j < m / 2; ++j) {
    const double avg = 0.5 * (v[j] + v[m - j]);
    v[j] = avg;
    v[m - j] = avg;
  }
  v.array() -= v.mean();
  return v;
}

double symbol(double wavenumber, double r) { return std::pow(wavenumber, -r); }

}  // namespace

PeriodicFunction::PeriodicFunction(int modes, Eigen::VectorXd values, Eigen::VectorXd coeffs)
    : modes_(modes), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

PeriodicFunction PeriodicFunction::zero(int modes) {
  require_modes(modes);
  return {modes, Eigen::VectorXd::Zero(modes), Eigen::VectorXd::Zero(modes / 2)};
}

PeriodicFunction PeriodicFunction::from_coeffs(int modes, const Eigen::VectorXd& coeffs) {
  require_modes(modes);
  if (coeffs.size() != modes / 2) {
    throw std::invalid_argument("expected M/2 cosine coefficients");
  }
  if (!coeffs.allFinite()) throw std::invalid_argument("coefficients must be finite");
  return {modes, values_from_coeffs(coeffs), coeffs};
}

PeriodicFunction PeriodicFunction::from_values(const Eigen::VectorXd& values) {
  const int m = static_cast<int>(values.size());
  require_modes(m);
  if (!values.allFinite()) throw std::invalid_argument("values must be finite");
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);

  Eigen::VectorXd v = values;
  double evenness_defect = 0.0;
  for (int j = 1; j < m / 2; ++j) {
    evenness_defect = std::max(evenness_defect, std::abs(v[j] - v[m - j]));
    const double avg = 0.5 * (v[j] + v[m - j]);
    v[j] = avg;
    v[m - j] = avg;
  }
  if (evenness_defect > 1e-8 * scale) {
    throw std::invalid_argument("values are not even about x = 0");
  }
  const double mean = v.mean();
  if (std::abs(mean) > 1e-3 * scale) {
    throw std::invalid_argument("values are not zero-mean");
  }
  v.array() -= mean;
  Eigen::VectorXd c = coeffs_from_values(v);
  return {m, values_from_coeffs(c), std::move(c)};
}

PeriodicFunction PeriodicFunction::sample(int modes, const std::function<double(double)>& f) {
  require_modes(modes);
  Eigen::VectorXd v(modes);
  const Eigen::VectorXd x = grid(modes);
  for (int j = 0; j < modes; ++j) v[j] = f(x[j]);
  return from_values(v);
}

double PeriodicFunction::coeff(int k) const {
  if (k < 1 || k > modes_ / 2) return 0.0;
  return coeffs_[k - 1];
}

double PeriodicFunction::operator()(double x) const {
  double s = 0.0;
  for (int k = modes_ / 2; k >= 1; --k) s += coeffs_[k - 1] * std::cos(k * x);
  return s;
}

double PeriodicFunction::sup_norm() const {
  return values_.size() == 0 ? 0.0 : values_.cwiseAbs().maxCoeff();
}

PeriodicFunction PeriodicFunction::resampled(int new_modes) const {
  require_modes(new_modes);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(new_modes / 2);
  const int keep = std::min(new_modes / 2, modes_ / 2);
  c.head(keep) = coeffs_.head(keep);
  return from_coeffs(new_modes, c);
}

Eigen::VectorXd PeriodicFunction::grid(int modes) {
  require_modes(modes);
  Eigen::VectorXd x(modes);
  for (int j = 0; j < modes; ++j) x[j] = -kPi + 2.0 * kPi * j / modes;
  return x;
}

PeriodicFunction apply_multiplier(const PeriodicFunction& f, double r) {
  Eigen::VectorXd c = f.cos_coeffs();
  for (int k = 1; k <= static_cast<int>(c.size()); ++k) {
    c[k - 1] *= symbol(static_cast<double>(k), r);
  }
  return PeriodicFunction::from_coeffs(f.modes(), c);
}

PeriodicFunction convolve_kernel(const PeriodicFunction& f, const KernelSpec& spec) {
  const int m = f.modes();
  const double step = 2.0 * kPi / m;
  Eigen::VectorXd kernel(m);
  for (int d = 0; d < m; ++d) kernel[d] = kernel_series_eval(spec, d * step).value;
  Eigen::VectorXd out(m);
  const Eigen::VectorXd& v = f.values();
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += kernel[(i - j + m) % m] * v[j];
    out[i] = s / m;  // trapezoid weight times the 1/2pi convolution normalization
  }
  return PeriodicFunction::from_values(out);
}

std::pair<PeriodicFunction, double> product_dealiased(const PeriodicFunction& f,
                                                      const PeriodicFunction& g) {
  if (f.modes() != g.modes()) throw std::invalid_argument("product of mismatched grids");
  const int m = f.modes();
  Eigen::VectorXd cf = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd cg = Eigen::VectorXd::Zero(m);
  cf.head(m / 2) = f.cos_coeffs();
  cg.head(m / 2) = g.cos_coeffs();
  const Eigen::VectorXd vf = values_from_coeffs(cf);
  const Eigen::VectorXd vg = values_from_coeffs(cg);
  const Eigen::VectorXd prod = vf.cwiseProduct(vg);
  const double mean = prod.mean();
  const Eigen::VectorXd c2 = coeffs_from_values(prod);
  return {PeriodicFunction::from_coeffs(m, c2.head(m / 2)), mean};
}

std::pair<PeriodicFunction, double> square_dealiased(const PeriodicFunction& f) {
  return product_dealiased(f, f);
}

PeriodicFunction residual(const PeriodicFunction& phi, double mu, double r) {
  const auto [sq, mean] = square_dealiased(phi);
  (void)mean;  // the mean term cancels the k = 0 mode, which is not stored
  const int half = phi.modes() / 2;
  Eigen::VectorXd rc(half);
  for (int k = 1; k <= half; ++k) {
    rc[k - 1] = (mu - symbol(static_cast<double>(k), r)) * phi.coeff(k) -
                0.5 * sq.coeff(k);
  }
  return PeriodicFunction::from_coeffs(phi.modes(), rc);
}

PeriodicFunction residual(const WaveSolution& sol, const KernelSpec& spec) {
  return residual(sol.phi, sol.mu, spec.r);
}

WaveSolution make_solution(PeriodicFunction phi, double mu, int symmetry, double r) {
  if (symmetry < 1) throw std::invalid_argument("symmetry index must be positive");
  const double cmax = std::max(phi.cos_coeffs().cwiseAbs().maxCoeff(), 1e-300);
  for (int k = 1; k <= phi.modes() / 2; ++k) {
    if (k % symmetry != 0 && std::abs(phi.coeff(k)) > 1e-12 * cmax) {
      throw std::invalid_argument("coefficients violate the requested k-fold symmetry");
    }
  }
  const auto [sq, mean] = square_dealiased(phi);
  (void)sq;
  const double b = 0.5 * mean;
  const double rn = residual(phi, mu, r).sup_norm();
  return WaveSolution{std::move(phi), mu, symmetry, rn, b};
}

WaveSolution make_solution(PeriodicFunction phi, double mu, int symmetry, const KernelSpec& spec) {
  return make_solution(std::move(phi), mu, symmetry, spec.r);
}

Eigen::VectorXd derivative_values(const PeriodicFunction& f) {
  const int m = f.modes();
  std::vector<std::complex<double>> spec(static_cast<size_t>(m), {0.0, 0.0});
  double sign = -1.0;
  for (int k = 1; k < m / 2; ++k) {
    // d/dx cos(kx) = -k sin(kx); the grid offset contributes (-1)^k as above.
    const double a = 0.5 * m * k * sign * f.coeff(k);
    spec[static_cast<size_t>(k)] = {0.0, a};
    spec[static_cast<size_t>(m - k)] = {0.0, -a};
    sign = -sign;
  }
  // sin(M/2 x_j) vanishes on the grid, so the Nyquist mode contributes nothing.
  std::vector<double> buf;
  fft().inv(buf, spec);
  return Eigen::Map<Eigen::VectorXd>(buf.data(), m);
}

}  // namespace peakwave
