#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peakwave/kernel.hpp"
#include "peakwave/spectral.hpp"

namespace peakwave {

struct LemmaCheck {
  std::string name;
  bool satisfied;
  double margin;  // signed distance to violation, positive = satisfied
};

struct RegularityFit {
  double alpha = 0.0;         // fitted crest exponent
  double lip_constant = 0.0;  // fitted coefficient
  double x_min = 0.0;
  double x_max = 0.0;
  double fit_rms = 0.0;
  std::string regime;  // "near_limit" or "smooth"
};

struct DiagnosticsReport {
  std::vector<LemmaCheck> checks;
  std::optional<RegularityFit> regularity;  // absent when the fit window is degenerate

  bool all_passed() const;
  const LemmaCheck& check(const std::string& name) const;
};

/// Kernel constants shared by all a priori checks at a fixed r; compute once
/// per branch rather than per point.
struct AprioriContext {
  KernelL1Norms l1;
  double lambda;
};

AprioriContext make_apriori_context(const KernelSpec& spec);

/// Evaluates the five a priori inequalities on a computed solution:
///   1. phi(x_M) + phi(x_m) >= 2 (mu - ||K_r||_L1)
///   2. max |d/dx (mu - phi)^2| <= 2 ||K_r'||_L1 ||phi||_inf
///   3. ||phi||_inf <= 2 (mu + ||K_r||_L1) + 2 pi ||K_r'||_L1
///   4. mu < 2 ||K_r||_L1
///   5. mu - phi(pi/k) >= k^-r lambda / 2
/// Norms follow the plain int_{-pi}^{pi} convention. Violations are reported
/// through the margins, never thrown.
DiagnosticsReport check_apriori(const WaveSolution& sol, const KernelSpec& spec,
                                const AprioriContext& ctx);
DiagnosticsReport check_apriori(const WaveSolution& sol, const KernelSpec& spec);

/// Log-log fit of the crest deficit over [4 * 2pi/M, pi/(8k)]. Near the
/// highest wave (height below 0.05 mu) the fitted quantity is mu - phi(x);
/// in the smooth regime it is phi(0) - phi(x) and alpha is expected near 2.
/// Throws std::runtime_error when the window holds fewer than 6 grid points.
RegularityFit crest_regularity_fit(const WaveSolution& sol);
RegularityFit crest_regularity_fit_windowed(const WaveSolution& sol, double x_min, double x_max);

/// Crest slope estimate. Near the highest wave it reads the k^-2 coefficient
/// plateau ((pi/2) j^2 c_j / k -> slope), which a corner of that slope
/// imprints; otherwise it averages one-sided secants over 8 to 16 grid
/// spacings away from the crest.
double crest_slope_estimate(const WaveSolution& sol);

struct BifurcationFitReport {
  double r = 0.0;
  int k = 0;
  std::vector<double> eps;
  std::vector<double> mu_shift;         // mu(eps) - k^-r
  std::vector<double> second_harmonic;  // coefficient of cos(2kx)
  double mu2_regressed = 0.0;           // eps^2 coefficient of mu
  double mu2_predicted = 0.0;           // k^r / (8 (1 - 2^-r))
  double c2_regressed = 0.0;            // eps^2 coefficient of the 2k harmonic
  double c2_predicted = 0.0;            // k^r / (4 (1 - 2^-r))
  bool solves_converged = false;
};

/// Solves at each eps under the fixed-first-coefficient constraint and
/// regresses the speed shift and second-harmonic coefficient on eps^2.
BifurcationFitReport verify_bifurcation_formulas(double r, int k,
                                                 const std::vector<double>& eps_list,
                                                 int modes = 256);

}  // namespace peakwave
