#pragma once

#include <vector>

#include "peakwave/spectral.hpp"

namespace peakwave {

struct KernelSpec;

enum class ConstraintKind {
  fixed_mu,           // solve for phi at prescribed speed
  fixed_first_coeff,  // amplitude chart: coefficient of cos(kx) pinned, mu free
  fixed_height        // height chart: mu - phi(0) pinned, mu free
};

struct Constraint {
  ConstraintKind kind = ConstraintKind::fixed_mu;
  double value = 0.0;

  static Constraint FixedMu() { return {ConstraintKind::fixed_mu, 0.0}; }
  static Constraint FirstCoeff(double eps) { return {ConstraintKind::fixed_first_coeff, eps}; }
  static Constraint Height(double h) { return {ConstraintKind::fixed_height, h}; }
};

struct NewtonConfig {
  double tol_residual = 1e-11;  // sup-norm stopping tolerance
  int max_iters = 30;
  double damping = 1.0;  // initial step fraction in (0, 1]
  Constraint constraint{};

  void validate() const;
};

enum class SolveFailure { none, max_iters, singular_jacobian, constraint_infeasible };

const char* to_string(SolveFailure f);

struct NewtonResult {
  WaveSolution solution;  // converged solution, or the best iterate on failure
  bool converged = false;
  SolveFailure failure = SolveFailure::none;
  int iterations = 0;
  std::vector<double> residual_history;  // sup norms, including the initial one
};

/// Frechet derivative of the steady residual at sol, applied to an even
/// zero-mean direction: the zero-mean part of (mu - phi) psi - L_r psi.
PeriodicFunction jacobian_apply(const WaveSolution& sol, const PeriodicFunction& direction,
                                double r);

/// Damped Newton-Galerkin iteration in the k-fold cosine coefficient space.
/// Under fixed_first_coeff or fixed_height, mu is an unknown and the scalar
/// constraint row is appended to the dense system.
NewtonResult newton_solve(const WaveSolution& initial, const NewtonConfig& cfg,
                          const KernelSpec& spec);

}  // namespace peakwave
