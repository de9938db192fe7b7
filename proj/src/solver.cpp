#include "peakwave/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "peakwave/kernel.hpp"

namespace peakwave {
namespace {

struct ReducedProblem {
  double r;
  int k;       // symmetry fold
  int modes;   // grid size M
  int n;       // number of reduced unknowns, wavenumbers k, 2k, ..., nk
};

Eigen::VectorXd reduced_from_full(const ReducedProblem& p, const Eigen::VectorXd& full) {
  Eigen::VectorXd c(p.n);
  for (int m = 1; m <= p.n; ++m) c[m - 1] = full[m * p.k - 1];
  return c;
}

PeriodicFunction phi_from_reduced(const ReducedProblem& p, const Eigen::VectorXd& c) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(p.modes / 2);
  for (int m = 1; m <= p.n; ++m) full[m * p.k - 1] = c[m - 1];
  return PeriodicFunction::from_coeffs(p.modes, full);
}

double symbol(double r, int wavenumber) { return std::pow(static_cast<double>(wavenumber), -r); }

struct Evaluation {
  PeriodicFunction phi;
  PeriodicFunction res;
  double res_norm;
  double constraint_defect;
};

double constraint_value(const Constraint& c, const Eigen::VectorXd& coeffs, double mu) {
  switch (c.kind) {
    case ConstraintKind::fixed_mu:
      return 0.0;
    case ConstraintKind::fixed_first_coeff:
      return coeffs[0] - c.value;
    case ConstraintKind::fixed_height:
      return mu - coeffs.sum() - c.value;
  }
  return 0.0;
}

Evaluation evaluate(const ReducedProblem& p, const Constraint& con, const Eigen::VectorXd& c,
                    double mu) {
  PeriodicFunction phi = phi_from_reduced(p, c);
  PeriodicFunction res = residual(phi, mu, p.r);
  const double rn = res.sup_norm();
  return {std::move(phi), std::move(res), rn, std::abs(constraint_value(con, c, mu))};
}

// dR_j/dc_l for the dealiased quadratic map, on the reduced index set:
//   (mu - j^-r) delta_{jl} - (a_{j+l} + a_{|j-l|} [j != l]) / 2
// with a the cosine coefficients of phi (zero beyond M/2).
Eigen::MatrixXd assemble_jacobian(const ReducedProblem& p, const Eigen::VectorXd& c, double mu) {
  auto a = [&](int wavenumber) -> double {
    if (wavenumber % p.k != 0) return 0.0;
    const int m = wavenumber / p.k;
    return (m >= 1 && m <= p.n) ? c[m - 1] : 0.0;
  };
  Eigen::MatrixXd jac(p.n, p.n);
  for (int m = 1; m <= p.n; ++m) {
    const int j = m * p.k;
    for (int l = 1; l <= p.n; ++l) {
      const int w = l * p.k;
      double v = -0.5 * a(j + w);
      if (m != l) v -= 0.5 * a(std::abs(j - w));
      if (m == l) v += mu - symbol(p.r, j);
      jac(m - 1, l - 1) = v;
    }
  }
  return jac;
}

}  // namespace

void NewtonConfig::validate() const {
  if (!(tol_residual > 0.0)) throw std::invalid_argument("tol_residual must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw std::invalid_argument("damping must lie in (0, 1]");
  }
}

const char* to_string(SolveFailure f) {
  switch (f) {
    case SolveFailure::none: return "none";
    case SolveFailure::max_iters: return "max_iters";
    case SolveFailure::singular_jacobian: return "singular_jacobian";
    case SolveFailure::constraint_infeasible: return "constraint_infeasible";
  }
  return "unknown";
}

PeriodicFunction jacobian_apply(const WaveSolution& sol, const PeriodicFunction& direction,
                                double r) {
  if (direction.modes() != sol.phi.modes()) {
    throw std::invalid_argument("direction lives on a different grid");
  }
  const auto [prod, prod_mean] = product_dealiased(sol.phi, direction);
  (void)prod_mean;  // derivative of the mean term; drops with the k = 0 mode
  const int half = direction.modes() / 2;
  Eigen::VectorXd out(half);
  for (int k = 1; k <= half; ++k) {
    out[k - 1] = (sol.mu - symbol(r, k)) * direction.coeff(k) - prod.coeff(k);
  }
  return PeriodicFunction::from_coeffs(direction.modes(), out);
}

NewtonResult newton_solve(const WaveSolution& initial, const NewtonConfig& cfg,
                          const KernelSpec& spec) {
  cfg.validate();
  const int modes = initial.phi.modes();
  const int k = initial.symmetry;
  const ReducedProblem prob{spec.r, k, modes, (modes / 2) / k};
  if (prob.n < 1) throw std::invalid_argument("grid too coarse for the requested symmetry");
  const bool mu_free = cfg.constraint.kind != ConstraintKind::fixed_mu;
  const double constraint_tol = 1e-12;

  Eigen::VectorXd c = reduced_from_full(prob, initial.phi.cos_coeffs());
  double mu = initial.mu;
  Evaluation cur = evaluate(prob, cfg.constraint, c, mu);

  NewtonResult result{make_solution(cur.phi, mu, k, spec.r), false, SolveFailure::none, 0, {}};
  result.residual_history.push_back(cur.res_norm);

  auto merit = [&](const Evaluation& e) { return std::max(e.res_norm, e.constraint_defect); };

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    if (cur.res_norm <= cfg.tol_residual && cur.constraint_defect <= constraint_tol) {
      result.converged = true;
      break;
    }
    result.iterations = iter + 1;

    const Eigen::MatrixXd jac = assemble_jacobian(prob, c, mu);
    Eigen::VectorXd res_red = reduced_from_full(prob, cur.res.cos_coeffs());

    const int dim = prob.n + (mu_free ? 1 : 0);
    Eigen::MatrixXd sys(dim, dim);
    Eigen::VectorXd rhs(dim);
    sys.topLeftCorner(prob.n, prob.n) = jac;
    rhs.head(prob.n) = -res_red;
    if (mu_free) {
      sys.topRightCorner(prob.n, 1) = c;  // dR/dmu
      if (cfg.constraint.kind == ConstraintKind::fixed_first_coeff) {
        sys.bottomLeftCorner(1, prob.n).setZero();
        sys(prob.n, 0) = 1.0;
        sys(prob.n, prob.n) = 0.0;
      } else {  // fixed_height
        sys.bottomLeftCorner(1, prob.n).setConstant(-1.0);
        sys(prob.n, prob.n) = 1.0;
      }
      rhs[prob.n] = -constraint_value(cfg.constraint, c, mu);
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);
    const Eigen::VectorXd udiag = lu.matrixLU().diagonal().cwiseAbs();
    if (udiag.minCoeff() <= 1e-14 * udiag.maxCoeff()) {
      result.failure = SolveFailure::singular_jacobian;
      break;
    }
    const Eigen::VectorXd step = lu.solve(rhs);
    if (!step.allFinite()) {
      result.failure = SolveFailure::singular_jacobian;
      break;
    }

    double alpha = cfg.damping;
    bool accepted = false;
    while (alpha >= std::ldexp(1.0, -8)) {
      Eigen::VectorXd c_try = c + alpha * step.head(prob.n);
      const double mu_try = mu_free ? mu + alpha * step[prob.n] : mu;
      Evaluation trial = evaluate(prob, cfg.constraint, c_try, mu_try);
      if (merit(trial) < merit(cur) || merit(trial) <= cfg.tol_residual) {
        c = std::move(c_try);
        mu = mu_try;
        cur = std::move(trial);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    result.residual_history.push_back(cur.res_norm);
    if (!accepted) {
      result.failure = cur.constraint_defect > constraint_tol
                           ? SolveFailure::constraint_infeasible
                           : SolveFailure::max_iters;
      break;
    }
  }

  // The loop checks convergence before iterating, so a solve that lands on
  // tolerance with its last step is classified here.
  if (!result.converged && result.failure == SolveFailure::none) {
    if (cur.res_norm <= cfg.tol_residual && cur.constraint_defect <= constraint_tol) {
      result.converged = true;
    } else if (cur.res_norm <= cfg.tol_residual) {
      result.failure = SolveFailure::constraint_infeasible;
    } else {
      result.failure = SolveFailure::max_iters;
    }
  }
  result.solution = make_solution(cur.phi, mu, k, spec.r);
  return result;
}

}  // namespace peakwave
