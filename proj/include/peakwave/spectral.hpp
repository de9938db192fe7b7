#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

namespace peakwave {

struct KernelSpec;

/// Real, even, zero-mean, 2pi-periodic function held simultaneously as
/// collocation values on the grid x_j = -pi + 2pi j/M and as coefficients of
/// cos(kx), k = 1..M/2. The k = 0 mode is not stored anywhere; zero mean and
/// evenness are structural. Immutable after construction.
class PeriodicFunction {
 public:
  static PeriodicFunction zero(int modes);
  static PeriodicFunction from_values(const Eigen::VectorXd& values);
  static PeriodicFunction from_coeffs(int modes, const Eigen::VectorXd& coeffs);
  static PeriodicFunction sample(int modes, const std::function<double(double)>& f);

  int modes() const { return modes_; }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXd& cos_coeffs() const { return coeffs_; }

  /// Coefficient of cos(kx); zero outside 1 <= k <= M/2.
  double coeff(int k) const;

  /// Cosine-series evaluation at an arbitrary abscissa.
  double operator()(double x) const;

  double sup_norm() const;
  double max_value() const { return values_.maxCoeff(); }
  double min_value() const { return values_.minCoeff(); }
  double crest_value() const { return coeffs_.sum(); }  // value at x = 0

  /// Truncates or zero-pads the coefficients onto a new grid size.
  PeriodicFunction resampled(int new_modes) const;

  static Eigen::VectorXd grid(int modes);

 private:
  PeriodicFunction(int modes, Eigen::VectorXd values, Eigen::VectorXd coeffs);

  int modes_;
  Eigen::VectorXd values_;
  Eigen::VectorXd coeffs_;
};

struct WaveSolution {
  PeriodicFunction phi;
  double mu;            // wave speed
  int symmetry;         // k-fold: only wavenumbers k, 2k, ... are present
  double residual_norm; // sup norm of the steady residual
  double b_constant;    // (1/4pi) int phi^2
};

/// Coefficient-wise action of the symbol k^-r (wavenumber zero absent).
PeriodicFunction apply_multiplier(const PeriodicFunction& f, double r);

/// Grid-space convolution (1/2pi) int K_r(x-y) f(y) dy by the trapezoid rule
/// against series samples of the kernel. Cross-validation path for
/// apply_multiplier, not the production path.
PeriodicFunction convolve_kernel(const PeriodicFunction& f, const KernelSpec& spec);

/// Pointwise square on a zero-padded 2M grid, truncated back to M/2 modes.
/// Returns the zero-mean part and the removed mean (1/2pi) int f^2 separately.
std::pair<PeriodicFunction, double> square_dealiased(const PeriodicFunction& f);

/// Dealiased pointwise product of two functions on the same grid.
std::pair<PeriodicFunction, double> product_dealiased(const PeriodicFunction& f,
                                                      const PeriodicFunction& g);

/// Steady residual mu phi - L_r phi - phi^2/2 + mean(phi^2)/2, which is
/// zero-mean by construction.
PeriodicFunction residual(const PeriodicFunction& phi, double mu, double r);
PeriodicFunction residual(const WaveSolution& sol, const KernelSpec& spec);

/// Builds a WaveSolution with residual_norm and b_constant filled in.
/// Validates the k-fold symmetry of the coefficients.
WaveSolution make_solution(PeriodicFunction phi, double mu, int symmetry, double r);
WaveSolution make_solution(PeriodicFunction phi, double mu, int symmetry, const KernelSpec& spec);

/// Grid values of f' (an odd function, so it cannot be a PeriodicFunction).
Eigen::VectorXd derivative_values(const PeriodicFunction& f);

}  // namespace peakwave
