#include "peakwave/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "peakwave/diagnostics.hpp"
#include "peakwave/kernel.hpp"

namespace peakwave {
namespace {

double crest_alpha_or_nan(const WaveSolution& sol) {
  try {
    return crest_regularity_fit(sol).alpha;
  } catch (const std::runtime_error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double secant_length(const WaveSolution& a, const WaveSolution& b) {
  const int m = std::max(a.phi.modes(), b.phi.modes());
  const Eigen::VectorXd ca = a.phi.resampled(m).cos_coeffs();
  const Eigen::VectorXd cb = b.phi.resampled(m).cos_coeffs();
  return std::sqrt((ca - cb).squaredNorm() + (a.mu - b.mu) * (a.mu - b.mu));
}

// Relative size of the last retained harmonics; drives mode escalation.
double tail_indicator(const WaveSolution& sol) {
  const Eigen::VectorXd& c = sol.phi.cos_coeffs();
  const int k = sol.symmetry;
  const int n = (sol.phi.modes() / 2) / k;
  if (n < 4) return 0.0;
  const double cmax = std::max(c.cwiseAbs().maxCoeff(), 1e-300);
  double tail = 0.0;
  for (int m = n - 1; m <= n; ++m) tail = std::max(tail, std::abs(c[m * k - 1]));
  return tail / cmax;
}

}  // namespace

const char* to_string(BranchTermination t) {
  switch (t) {
    case BranchTermination::height_floor_reached: return "height_floor_reached";
    case BranchTermination::step_floor: return "step_floor";
    case BranchTermination::max_steps: return "max_steps";
    case BranchTermination::solver_failure: return "solver_failure";
  }
  return "unknown";
}

BranchTermination branch_termination_from_string(const std::string& s) {
  if (s == "height_floor_reached") return BranchTermination::height_floor_reached;
  if (s == "step_floor") return BranchTermination::step_floor;
  if (s == "max_steps") return BranchTermination::max_steps;
  if (s == "solver_failure") return BranchTermination::solver_failure;
  throw std::invalid_argument("unknown branch termination: " + s);
}

BifurcationPoint bifurcation_point(double r, int k, int modes) {
  if (k < 1) throw std::invalid_argument("symmetry index must be positive");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(modes / 2);
  c[k - 1] = 1.0;
  return {k, std::pow(static_cast<double>(k), -r), PeriodicFunction::from_coeffs(modes, c)};
}

WaveSolution asymptotic_seed(double r, int k, double eps, int modes) {
  if (!(eps >= 0.0 && eps <= 0.1)) {
    throw std::invalid_argument("seed amplitude must lie in [0, 0.1]");
  }
  if (k < 1) throw std::invalid_argument("symmetry index must be positive");
  const double kr = std::pow(static_cast<double>(k), r);
  const double denom = 1.0 - std::pow(2.0, -r);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(modes / 2);
  if (eps > 0.0) {
    c[k - 1] = eps;
    if (2 * k <= modes / 2) c[2 * k - 1] = 0.25 * eps * eps * kr / denom;
  }
  const double mu = std::pow(static_cast<double>(k), -r) + eps * eps * kr / (8.0 * denom);
  return make_solution(PeriodicFunction::from_coeffs(modes, c), mu, k, r);
}

Branch continue_branch(double r, int k, const ContinuationConfig& cfg, const KernelSpec& spec) {
  Branch branch;
  branch.r = r;
  branch.k = k;
  branch.termination = BranchTermination::solver_failure;

  // Higher folds need proportionally finer grids for the same per-period
  // resolution (and a usable crest-fit window).
  int modes = cfg.initial_modes;
  while (modes < 256 * k && 2 * modes <= cfg.max_modes) modes *= 2;
  NewtonConfig newton = cfg.newton;

  newton.constraint = Constraint::FirstCoeff(cfg.seed_eps);
  auto seed_result = newton_solve(asymptotic_seed(r, k, cfg.seed_eps, modes), newton, spec);
  if (!seed_result.converged) return branch;

  WaveSolution current = seed_result.solution;
  double s = std::sqrt(current.phi.cos_coeffs().squaredNorm() +
                       std::pow(current.mu - std::pow(static_cast<double>(k), -r), 2));
  branch.points.push_back({s, current, current.mu - current.phi.crest_value(),
                           crest_alpha_or_nan(current)});

  double step = cfg.initial_step;
  int fast_streak = 0;

  auto solve_at_height = [&](double h, const WaveSolution& guess) {
    newton.constraint = Constraint::Height(h);
    return newton_solve(guess, newton, spec);
  };

  while (static_cast<int>(branch.points.size()) < cfg.max_steps) {
    const double h = branch.points.back().height;
    if (h <= cfg.height_floor * (1.0 + 1e-12)) {
      branch.termination = BranchTermination::height_floor_reached;
      break;
    }
    // Geometric approach to the floor: never halve past h/2 in one step, so
    // the deepest points are well spaced for the terminal extrapolation.
    const double h_target = std::max(h - step, std::max(cfg.height_floor, 0.5 * h));

    // Secant predictor in the height chart.
    WaveSolution guess = current;
    if (branch.points.size() >= 2) {
      const auto& prev = branch.points[branch.points.size() - 2];
      const double hp = prev.height;
      if (h != hp) {
        const double t = (h_target - h) / (h - hp);
        const Eigen::VectorXd cc = current.phi.resampled(modes).cos_coeffs();
        const Eigen::VectorXd cp = prev.solution.phi.resampled(modes).cos_coeffs();
        Eigen::VectorXd cg = cc + t * (cc - cp);
        const double mug = current.mu + t * (current.mu - prev.solution.mu);
        guess = make_solution(PeriodicFunction::from_coeffs(modes, cg), mug, k, r);
      }
    }

    auto result = solve_at_height(h_target, guess);
    if (!result.converged) {
      fast_streak = 0;
      step *= 0.5;
      if (step < cfg.step_floor) {
        branch.termination = BranchTermination::step_floor;
        break;
      }
      continue;
    }

    // Escalate the grid while the retained tail is too fat for the new point.
    while (tail_indicator(result.solution) > cfg.tail_threshold && modes < cfg.max_modes) {
      modes *= 2;
      auto lifted = make_solution(result.solution.phi.resampled(modes), result.solution.mu, k, r);
      auto refined = solve_at_height(h_target, lifted);
      if (!refined.converged) break;
      result = refined;
    }

    current = result.solution;
    s += secant_length(branch.points.back().solution, current);
    branch.points.push_back({s, current, current.mu - current.phi.crest_value(),
                             crest_alpha_or_nan(current)});

    if (result.iterations <= 4) {
      if (++fast_streak >= 3) {
        step = std::min(step * cfg.step_growth, cfg.step_max);
        fast_streak = 0;
      }
    } else {
      fast_streak = 0;
    }
  }

  if (static_cast<int>(branch.points.size()) >= cfg.max_steps) {
    branch.termination = BranchTermination::max_steps;
  }
  return branch;
}

RevisitReport detect_turning_or_revisit(const Branch& branch, double tol_revisit) {
  if (branch.points.size() < 3) {
    throw std::invalid_argument("revisit detection needs at least 3 points");
  }
  RevisitReport rep;
  const auto n = branch.points.size();
  std::vector<double> mu(n), amp(n);
  for (size_t i = 0; i < n; ++i) {
    mu[i] = branch.points[i].solution.mu;
    amp[i] = branch.points[i].solution.phi.max_value();
  }
  for (size_t i = 0; i + 5 < n && !rep.revisit_flagged; ++i) {
    for (size_t j = i + 5; j < n; ++j) {
      if (std::hypot(mu[i] - mu[j], amp[i] - amp[j]) < tol_revisit) {
        rep.revisit_flagged = true;
        rep.revisit_first = static_cast<int>(i);
        rep.revisit_second = static_cast<int>(j);
        break;
      }
    }
  }
  const double amp_head = *std::max_element(amp.begin(), amp.begin() + 3);
  if (amp.back() < 0.1 * amp_head) rep.trivial_line_flagged = true;
  return rep;
}

TerminalSpeed extrapolate_terminal_speed(const Branch& branch) {
  if (branch.points.empty()) throw std::invalid_argument("empty branch");
  const auto& pts = branch.points;
  TerminalSpeed out{pts.back().solution.mu, pts.back().solution.mu};
  const int n = static_cast<int>(pts.size());
  const int use = std::min(3, n);
  if (use < 2) return out;

  // Neville extrapolation of mu(h) to h = 0 on the deepest points.
  std::vector<double> h(use), v(use);
  for (int i = 0; i < use; ++i) {
    h[i] = pts[n - use + i].height;
    v[i] = pts[n - use + i].solution.mu;
  }
  for (int level = 1; level < use; ++level) {
    for (int i = 0; i < use - level; ++i) {
      const double denom = h[i] - h[i + level];
      if (denom == 0.0) return out;
      v[i] = ((0.0 - h[i + level]) * v[i] - (0.0 - h[i]) * v[i + 1]) / (h[i] - h[i + level]);
    }
  }
  out.extrapolated = v[0];
  return out;
}

}  // namespace peakwave
