#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "ftddp/model.hpp"

namespace ftddp {

/// Uniform time discretization over [0, tf]: N+1 state knots and N control
/// knots, controls held zero-order over each interval. dt is derived as
/// tf / N so that dt * N == tf to machine precision.
struct TrajectoryGrid {
  double tf = 0.0;
  std::vector<Eigen::VectorXd> x;  // N+1 states
  std::vector<Eigen::VectorXd> u;  // N controls

  int knot_count() const { return static_cast<int>(u.size()); }
  double dt() const { return tf / knot_count(); }
  double time(int i) const { return i * dt(); }

  bool all_finite() const;
};

/// Second-order expansion of the value function at one time knot, in state,
/// multiplier and horizon.
struct ValueExpansion {
  double V = 0.0;
  Eigen::VectorXd Vx;      // n
  Eigen::VectorXd Vnu;     // k
  double Vtf = 0.0;
  Eigen::MatrixXd Vxx;     // n x n, symmetric
  Eigen::MatrixXd Vnunu;   // k x k, symmetric
  double Vtftf = 0.0;
  Eigen::MatrixXd Vxnu;    // n x k
  Eigen::VectorXd Vxtf;    // n
  Eigen::VectorXd Vnutf;   // k

  static ValueExpansion zero(int n, int k);

  /// Replaces Vxx and Vnunu by their symmetric parts.
  void symmetrize();
  bool all_finite() const;
};

/// Per-knot feedback terms of the control update
/// du = l + Kx dx + Knu dnu + Ktf dtf.
struct GainSchedule {
  std::vector<Eigen::VectorXd> l;    // m
  std::vector<Eigen::MatrixXd> Kx;   // m x n
  std::vector<Eigen::MatrixXd> Knu;  // m x k
  std::vector<Eigen::VectorXd> Ktf;  // m

  int knot_count() const { return static_cast<int>(l.size()); }
};

/// Problem data: dynamics, running cost, terminal objective, initial state
/// and initial guesses for the multiplier and horizon.
struct ProblemDefinition {
  std::shared_ptr<const DynamicsModel> dynamics;
  std::shared_ptr<const RunningCost> running_cost;
  std::shared_ptr<const TerminalObjective> terminal;
  Eigen::VectorXd x0;
  Eigen::VectorXd nu_init;
  double tf_init = 1.0;

  int state_dim() const { return dynamics->state_dim(); }
  int control_dim() const { return dynamics->control_dim(); }
  int constraint_dim() const { return terminal->constraint_dim(); }

  void validate() const;
};

/// One accepted solver iteration.
struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  double tf = 0.0;
  Eigen::VectorXd nu;
  double psi_norm = 0.0;         // ||psi(x_N, tf)||_2
  double gamma_accepted = 0.0;
  double zeta_accepted = 0.0;
  double hamiltonian_residual = 0.0;
  double merit = 0.0;
  bool stalled = false;
};

/// Re-discretizes the control schedule onto a new horizon: same knot count,
/// control knot i keeps its value (time-normalized stretching). States are
/// copied but are only meaningful after a fresh rollout.
TrajectoryGrid regrid(const TrajectoryGrid& traj, double new_tf);

/// Phi(x_N, nu, tf) plus trapezoidal quadrature of the running cost over the
/// grid; the integrand at knot N uses the last control.
double total_cost(const ProblemDefinition& problem, const TrajectoryGrid& traj,
                  const Eigen::VectorXd& nu);

}  // namespace ftddp
