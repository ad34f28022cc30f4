#pragma once

#include <vector>

#include "ftddp/core.hpp"

namespace ftddp {

/// Dynamics and cost derivatives evaluated at one trajectory knot.
struct KnotDerivatives {
  Eigen::MatrixXd A;    // n x n
  Eigen::MatrixXd B;    // n x m
  Eigen::VectorXd f;    // n
  double L = 0.0;
  Eigen::VectorXd Lx;   // n
  Eigen::VectorXd Lu;   // m
  Eigen::MatrixXd Lxx;  // n x n
  Eigen::MatrixXd Luu;  // m x m
  Eigen::MatrixXd Lxu;  // n x m
};

/// Feedback terms at one knot.
struct Gains {
  Eigen::VectorXd l;    // m
  Eigen::MatrixXd Kx;   // m x n
  Eigen::MatrixXd Knu;  // m x k
  Eigen::VectorXd Ktf;  // m
};

struct BackwardPassResult {
  std::vector<ValueExpansion> value;  // N+1 entries, knot 0..N
  GainSchedule gains;                 // N entries
};

/// Signals a backward sweep that produced non-finite expansion terms or an
/// L_uu block that stayed singular after regularization. The caller is
/// expected to raise the regularization floor and retry.
struct BackwardPassError : std::runtime_error {
  BackwardPassError(const std::string& what, int knot_index)
      : std::runtime_error(what), knot(knot_index) {}
  int knot = -1;
};

/// Derivatives at every knot of the trajectory; the entry at knot N uses the
/// last control.
std::vector<KnotDerivatives> evaluate_knot_derivatives(
    const ProblemDefinition& problem, const TrajectoryGrid& traj);

/// Value-expansion terminal conditions at t = tf, built from the terminal
/// objective and the dynamics evaluated at the final knot.
ValueExpansion terminal_conditions(const ProblemDefinition& problem,
                                   const TrajectoryGrid& traj,
                                   const Eigen::VectorXd& nu, double tf);

/// Gains from the control stationarity condition:
///   l   = -Luu^-1 (Lu + B' Vx)
///   Kx  = -Luu^-1 (Lux/2 + Lxu'/2 + B' Vxx)
///   Knu = -Luu^-1 B' Vxnu
///   Ktf = -Luu^-1 B' Vxtf
/// Luu receives a Levenberg shift mu*I when its smallest eigenvalue is below
/// mu; if it is still not positive definite the pass fails.
Gains compute_gains(const KnotDerivatives& kd, const ValueExpansion& ve,
                    double mu);

/// Integrates the value-expansion ODE system backward from the terminal
/// conditions to knot 0 with classical fourth-order steps, interpolating the
/// knot derivatives linearly inside each interval. Vxx and Vnunu are
/// symmetrized after every step; gains are recomputed and stored per knot.
BackwardPassResult backward_pass(const ProblemDefinition& problem,
                                 const TrajectoryGrid& traj,
                                 const Eigen::VectorXd& nu, double mu);

}  // namespace ftddp
