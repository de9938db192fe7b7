#pragma once

#include "peakwave/continuation.hpp"
#include "peakwave/spectral.hpp"

namespace peakwave {

/// Speed of the highest 2pi-periodic wave of the r = 2 equation, pi^2/9.
double peaked_wave_speed();

/// The explicit peaked wave with its crest shifted to x = 0:
///   phi(x) = (3 (|x| - pi)^2 - pi^2) / 18 on [-pi, pi].
double peaked_wave_value(double x);

/// The same wave in its crest-at-pi normalization, (3x^2 - pi^2)/18 on
/// [-pi, pi]; peaked_wave_value(x) equals this at x - pi.
double peaked_wave_value_crest_at_pi(double x);

/// Grid sampling of the peaked wave as a WaveSolution (mu = pi^2/9, k = 1),
/// with the residual evaluated through the r = 2 nonlocal form.
/// Requires modes >= 256.
WaveSolution peaked_wave_sample(int modes);

/// Sup norm of the nonlocal steady residual of the sampled peaked wave.
double verify_nonlocal_residual(int modes);

/// Applies d^2/dx^2 spectrally to (phi^2/2 - mu phi) and subtracts phi,
/// returning the sup norm of this local-form residual. Refused (throws
/// std::domain_error) for near-peaked input, height below 0.05 mu, where
/// spectral differentiation of the incipient corner is meaningless.
double verify_local_form(const WaveSolution& sol);

struct SpeedWindowReport {
  double lower = 0.0;       // k^-2
  double upper = 0.0;       // k^-2 pi^2/9
  double mu_min = 0.0;
  double mu_max = 0.0;
  int violations = 0;
  bool all_inside = false;
  double terminal_extrapolated = 0.0;
  bool terminal_within = false;  // within terminal_rel_tol of the upper endpoint
};

/// Checks k^-2 < mu < k^-2 pi^2/9 strictly on every branch point, and the
/// extrapolated terminal speed against the upper endpoint.
SpeedWindowReport check_speed_window(const Branch& branch, double terminal_rel_tol = 0.02);

}  // namespace peakwave
