#pragma once

#include <string>
#include <vector>

#include "peakwave/solver.hpp"
#include "peakwave/spectral.hpp"

namespace peakwave {

struct BifurcationPoint {
  int k;
  double mu_star;  // k^-r
  PeriodicFunction kernel_direction;  // cos(kx)
};

BifurcationPoint bifurcation_point(double r, int k, int modes);

/// Small-amplitude second-order branch expansion in the first-harmonic chart:
///   phi = eps cos(kx) + (eps^2/4) k^r/(1 - 2^-r) cos(2kx)
///   mu  = k^-r + eps^2 k^r / (8 (1 - 2^-r))
/// The defect of this seed is O(eps^3).
WaveSolution asymptotic_seed(double r, int k, double eps, int modes);

struct BranchPoint {
  double s;       // accumulated secant length in (coefficients, mu)
  WaveSolution solution;
  double height;  // mu - phi(0)
  double alpha_fit;  // crest exponent fit at this point (NaN when unavailable)
};

enum class BranchTermination { height_floor_reached, step_floor, max_steps, solver_failure };

const char* to_string(BranchTermination t);
BranchTermination branch_termination_from_string(const std::string& s);

struct Branch {
  std::vector<BranchPoint> points;
  double r = 0.0;
  int k = 0;
  BranchTermination termination = BranchTermination::solver_failure;
};

struct ContinuationConfig {
  double seed_eps = 0.01;
  int initial_modes = 256;
  int max_modes = 4096;
  double height_floor = 1e-3;
  double initial_step = 0.02;
  double step_floor = 1e-5;
  double step_growth = 1.3;
  double step_max = 0.08;
  int max_steps = 4000;
  double tail_threshold = 1e-10;  // relative size of the last retained coefficient
  NewtonConfig newton{};
};

/// Marches the branch from the asymptotic seed toward the highest wave in
/// decreasing height h = mu - phi(0), with adaptive step control and mode
/// escalation when the coefficient tail grows.
Branch continue_branch(double r, int k, const ContinuationConfig& cfg, const KernelSpec& spec);

struct RevisitReport {
  bool revisit_flagged = false;
  bool trivial_line_flagged = false;
  int revisit_first = -1;
  int revisit_second = -1;
};

/// Flags any return of (mu, max phi) into an earlier ball of radius
/// tol_revisit, and decay of max phi toward the trivial line.
RevisitReport detect_turning_or_revisit(const Branch& branch, double tol_revisit = 1e-8);

struct TerminalSpeed {
  double extrapolated;  // Richardson extrapolation of mu(h) to h = 0
  double last;          // speed at the deepest computed point
};

TerminalSpeed extrapolate_terminal_speed(const Branch& branch);

}  // namespace peakwave
