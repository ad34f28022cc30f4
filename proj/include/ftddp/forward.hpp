#pragma once

#include <limits>

#include "ftddp/core.hpp"

namespace ftddp {

/// One candidate step: gamma scales the control correction, zeta scales the
/// multiplier/horizon update that produced (delta_nu, delta_tf).
struct StepProposal {
  double gamma = 1.0;
  double zeta = 1.0;
  Eigen::VectorXd delta_nu;
  double delta_tf = 0.0;
};

struct MultiplierTimeOptions {
  double mu_m = 1e-8;        // absolute eigenvalue floor
  double cond_floor = 0.02;  // relative eigenvalue floor
  double dtf_cap_frac = 0.05; // |delta_tf| <= frac * tf
  // Flat per-iteration trust cap on the multiplier step. Linear growth of
  // nu keeps the dual ratchet at a pace the gamma-scaled control tracking
  // can follow; proportional caps compound into runaway multipliers.
  double dnu_cap = 0.5;
  // The horizon is held while ||psi||_2 exceeds this bound: the
  // transversality residual only carries meaning near feasibility, and
  // chasing it from an infeasible nominal collapses the horizon.
  double tf_freeze_residual = std::numeric_limits<double>::infinity();
};

struct MultiplierTimeUpdate {
  Eigen::VectorXd delta_nu;
  double delta_tf = 0.0;
  bool held = false;         // every direction was singular
  int truncated = 0;         // eigen-directions dropped as unobservable
  double step_scale = 1.0;   // applied trust-region scaling
};

/// Solves the coupled Newton system for (delta_nu, delta_tf): the curvature
/// block is taken from the expansion at t0 and the residual vector from the
/// terminal side. Eigen-directions whose curvature is below the floor get a
/// zero step; the result is scaled to the trust caps, preserving direction.
MultiplierTimeUpdate update_multiplier_time(
    const ValueExpansion& ve0, const ValueExpansion& veT, double zeta,
    double tf, const Eigen::VectorXd& nu, const MultiplierTimeOptions& opts = {});

struct RolloutResult {
  TrajectoryGrid traj;
  double cost = 0.0;
  bool diverged = false;
};

/// Integrates the dynamics forward from x0 over the proposed horizon with
/// fourth-order steps, applying at each knot
///   u_i = ubar_i + gamma (l_i + Kx_i dx_i + Knu_i dnu + Ktf_i dtf)
/// with dx_i measured against the previous nominal at the same knot index.
/// States above 1e8 in magnitude signal divergence.
RolloutResult rollout(const ProblemDefinition& problem,
                      const TrajectoryGrid& prev, const GainSchedule& gains,
                      const StepProposal& proposal, const Eigen::VectorXd& nu);

struct LineSearchOptions {
  double gamma_max = 0.05;
  double epsilon = 0.05;       // zeta applied to the multiplier/time update
  int max_halvings = 8;
  double t_min = 0.05;
  double t_max = 100.0;
  MultiplierTimeOptions update;
};

struct LineSearchResult {
  TrajectoryGrid traj;
  Eigen::VectorXd nu;
  double tf = 0.0;
  double cost = 0.0;
  double merit = 0.0;
  double gamma = 0.0;
  double zeta = 0.0;
  double delta_tf = 0.0;
  bool stalled = false;
  bool failed = false;  // every candidate diverged
};

/// Backtracking over jointly halved (gamma, zeta) against the merit
/// J + rho ||psi||_1. The first candidate that decreases the merit wins; if
/// none does after max_halvings, the largest-gamma finite candidate is
/// accepted and flagged as a stall.
LineSearchResult line_search(const ProblemDefinition& problem,
                             const TrajectoryGrid& prev,
                             const GainSchedule& gains,
                             const ValueExpansion& ve0,
                             const ValueExpansion& veT,
                             const Eigen::VectorXd& nu,
                             const LineSearchOptions& opts);

/// Plain forward integration of a fixed control schedule (no feedback).
TrajectoryGrid integrate_controls(const ProblemDefinition& problem,
                                  const std::vector<Eigen::VectorXd>& controls,
                                  double tf);

}  // namespace ftddp
