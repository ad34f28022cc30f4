#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ftddp/backward.hpp"
#include "ftddp/core.hpp"
#include "ftddp/forward.hpp"

namespace ftddp {

struct SolverOptions {
  int max_iterations = 300;
  double gamma_max = 0.05;
  double epsilon = 0.05;          // zeta of the multiplier/horizon update
  double tol_cost_change = 1e-8;  // relative
  double tol_constraint = 1e-4;   // ||psi||_2
  double tol_tf_change = 1e-6;    // seconds
  double t_min = 0.05;
  double t_max = 100.0;
  int knot_count = 200;
  double mu = 1e-9;               // Luu regularization floor
  double mu_max = 1e-2;
  double mu_m = 1e-8;             // multiplier/time update eigenvalue floor
  // Horizon updates wait until the constraint residual has dropped below
  // this fraction of its value along the initial nominal.
  double tf_gate_frac = 0.2;
  MultiplierTimeOptions update;
  std::vector<Eigen::VectorXd> initial_control;  // empty means zero schedule

  void validate() const;
};

enum class SolveStatus { Converged, MaxIterations, Stalled, Failed };

const char* to_string(SolveStatus status);

struct Solution {
  TrajectoryGrid trajectory;
  Eigen::VectorXd nu;
  double tf = 0.0;
  double cost = 0.0;
  double psi_norm = 0.0;
  double hamiltonian_residual = 0.0;
  SolveStatus status = SolveStatus::Failed;
  std::vector<IterationRecord> records;
};

using RecordSink = std::function<void(const IterationRecord&)>;

/// Runs the iterate loop: knot derivatives, backward pass, multiplier/time
/// update, line-searched rollout. Convergence requires small relative cost
/// change, constraint residual below tolerance and a small accepted horizon
/// change on two consecutive iterations.
Solution solve(const ProblemDefinition& problem, const SolverOptions& options,
               const RecordSink& sink = nullptr);

/// Free-time optimality residual H(tf) = L + Vx(tf)' f at the final knot.
double hamiltonian_residual(const ProblemDefinition& problem,
                            const TrajectoryGrid& traj,
                            const std::vector<ValueExpansion>& ve_schedule);

}  // namespace ftddp
