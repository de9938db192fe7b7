#pragma once

#include <vector>

namespace peakwave {

/// Symbol order r (> 1) together with the evaluation policy for the
/// periodic convolution kernel K_r(x) = 2 sum_{k>=1} k^-r cos(kx).
struct KernelSpec {
  double r;
  int series_cap;         // series truncation N
  int quadrature_points;  // adaptive-quadrature interval budget

  explicit KernelSpec(double r_, int series_cap_ = 10'000, int quadrature_points_ = 512);
};

struct KernelEval {
  double x;           // abscissa reduced into [-pi, pi]
  double value;
  double tail_bound;  // guaranteed absolute error of this evaluation
};

/// Truncated cosine series, tail bounded by 2 N^(1-r)/(r-1).
KernelEval kernel_series_eval(const KernelSpec& spec, double x);

/// True when the Bernoulli-polynomial closed form applies (even integer r in [2, 12]).
bool kernel_closed_form_available(double r);

/// Closed form K_2n(x) = (-1)^(n-1)/(2n)! (2pi)^2n B_2n(x/2pi) on [0, pi],
/// extended evenly and periodically. Throws std::invalid_argument unless
/// kernel_closed_form_available(r).
double kernel_closed_form(double r, double x);

/// Lower abscissa limit of the Gamma-integral representation.
double kernel_gamma_cutoff();

/// Gamma-integral representation, evaluated after the substitution u = e^-t:
///   K_r(x) = (2/Gamma(r)) Int_0^1 (-ln u)^(r-1) (cos x - u) / (u^2 - 2u cos x + 1) du.
/// Throws std::domain_error when |x| reduces below kernel_gamma_cutoff().
double kernel_gamma_integral(const KernelSpec& spec, double x);

/// Best available evaluation: closed form, else Gamma integral, else series.
KernelEval kernel_eval_best(const KernelSpec& spec, double x);

double kernel_value_at_zero(const KernelSpec& spec);  // 2 zeta(r)
double kernel_value_at_pi(const KernelSpec& spec);    // -2 eta(r)

struct KernelL1Norms {
  double k_l1;                    // int_{-pi}^{pi} |K_r|
  double k_prime_l1;              // int_{-pi}^{pi} |K_r'|
  double k_l1_normalized;         // (1/2pi) int |K_r|
  double k_prime_l1_normalized;   // (1/2pi) int |K_r'|
  double sign_change;             // the unique zero of K_r in (0, pi)
  double error_estimate;
};

/// L1 norms of the kernel and its derivative over a full period. Both the
/// plain and the 1/(2pi)-normalized conventions are reported.
/// Throws std::runtime_error when the quadrature fails to converge.
KernelL1Norms kernel_l1_norms(const KernelSpec& spec);

struct CompleteMonotonicityReport {
  bool completely_monotonic;
  int worst_order;
  int worst_index;
  double worst_value;      // min over n,k of (-1)^n Delta^n mu_k
  double tolerance_at_worst;
};

/// Checks (-1)^n Delta^n (k+1)^-r >= -tol for n <= n_max, k <= k_max.
CompleteMonotonicityReport check_complete_monotonicity(double r, int n_max, int k_max);

/// Same check for an injected sequence mu_0, mu_1, ... (needs k_max + n_max + 1 terms).
CompleteMonotonicityReport check_complete_monotonicity_sequence(const std::vector<double>& mu,
                                                                int n_max, int k_max,
                                                                double tol_base);

enum class MonotoneVerdict { decreasing, not_decreasing, indeterminate };

struct MonotonicityReport {
  MonotoneVerdict verdict;
  double worst_margin;  // min_i (v_i - v_{i+1})
  double worst_x;
  double eval_error;    // largest evaluation error bound along the grid
};

/// Strict decrease of K_r along a grid inside (0, pi). The verdict is
/// "indeterminate" whenever margins do not clear the evaluation error bounds,
/// so a pass is never claimed on noise.
MonotonicityReport check_monotone_decreasing(const KernelSpec& spec, int grid_size);
MonotonicityReport check_monotone_decreasing_values(const std::vector<double>& xs,
                                                    const std::vector<double>& values,
                                                    const std::vector<double>& errors);

struct LambdaBox {
  double lambda;       // certified positive lower bound
  double lambda_grid;  // plain grid minimum / 2 (no margin)
  int grid;
};

/// lambda = 1/2 min over [-3pi/4, -pi/4]^2 of K_r(x-y) - K_r(x+y), bounded
/// below cell-by-cell through the monotonicity of K_r. Throws
/// std::runtime_error if the certified bound is not strictly positive.
LambdaBox lambda_box_constant(const KernelSpec& spec, int grid = 256);

/// Coefficients of the n-th Bernoulli polynomial in ascending powers,
/// generated by the defining recurrence with exact rational arithmetic.
std::vector<double> bernoulli_polynomial(int n);

}  // namespace peakwave
