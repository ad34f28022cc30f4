#include "ftddp/solver.hpp"

#include <cmath>

namespace ftddp {

void SolverOptions::validate() const {
  if (max_iterations < 1) {
    throw std::invalid_argument("SolverOptions: max_iterations must be >= 1");
  }
  if (!(gamma_max > 0.0) || gamma_max > 1.0) {
    throw std::invalid_argument("SolverOptions: gamma_max must be in (0, 1]");
  }
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("SolverOptions: epsilon must be in [0, 1]");
  }
  if (!(tol_cost_change > 0.0) || !(tol_constraint > 0.0) ||
      !(tol_tf_change > 0.0)) {
    throw std::invalid_argument("SolverOptions: tolerances must be positive");
  }
  if (!(t_min > 0.0) || !(t_max > t_min)) {
    throw std::invalid_argument("SolverOptions: need 0 < t_min < t_max");
  }
  if (knot_count < 2) {
    throw std::invalid_argument("SolverOptions: knot_count must be >= 2");
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iter";
    case SolveStatus::Stalled: return "stalled";
    case SolveStatus::Failed: return "failed";
  }
  return "unknown";
}

namespace {

double terminal_hamiltonian(const ProblemDefinition& problem,
                            const TrajectoryGrid& traj,
                            const Eigen::VectorXd& nu) {
  const Eigen::VectorXd& xN = traj.x.back();
  const Eigen::VectorXd& uN = traj.u.back();
  const double L = problem.running_cost->L(xN, uN, traj.tf);
  const Eigen::VectorXd Vx_T =
      problem.terminal->phi_x(xN, traj.tf) +
      problem.terminal->psi_x(xN, traj.tf).transpose() * nu;
  return L + Vx_T.dot(problem.dynamics->f(xN, uN, traj.tf));
}

}  // namespace

double hamiltonian_residual(const ProblemDefinition& problem,
                            const TrajectoryGrid& traj,
                            const std::vector<ValueExpansion>& ve_schedule) {
  const Eigen::VectorXd& xN = traj.x.back();
  const Eigen::VectorXd& uN = traj.u.back();
  const double L = problem.running_cost->L(xN, uN, traj.tf);
  return L + ve_schedule.back().Vx.dot(problem.dynamics->f(xN, uN, traj.tf));
}

Solution solve(const ProblemDefinition& problem, const SolverOptions& options,
               const RecordSink& sink) {
  problem.validate();
  options.validate();
  if (problem.tf_init < options.t_min || problem.tf_init > options.t_max) {
    throw std::invalid_argument("solve: tf_init outside [t_min, t_max]");
  }

  const int N = options.knot_count;
  const int m = problem.control_dim();
  std::vector<Eigen::VectorXd> controls = options.initial_control;
  if (controls.empty()) {
    controls.assign(N, Eigen::VectorXd::Zero(m));
  }
  if (static_cast<int>(controls.size()) != N) {
    throw std::invalid_argument("solve: initial_control length must match N");
  }

  Solution sol;
  sol.trajectory = integrate_controls(problem, controls, problem.tf_init);
  sol.nu = problem.nu_init;
  sol.tf = problem.tf_init;
  sol.cost = total_cost(problem, sol.trajectory, sol.nu);

  LineSearchOptions ls;
  ls.gamma_max = options.gamma_max;
  ls.epsilon = options.epsilon;
  ls.t_min = options.t_min;
  ls.t_max = options.t_max;
  ls.update = options.update;
  ls.update.mu_m = options.mu_m;
  const double psi0 =
      problem.terminal->psi(sol.trajectory.x.back(), sol.tf).norm();
  ls.update.tf_freeze_residual =
      std::max(10.0 * options.tol_constraint, options.tf_gate_frac * psi0);

  int satisfied_streak = 0;
  int consecutive_failures = 0;
  double prev_cost = sol.cost;
  sol.status = SolveStatus::MaxIterations;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    // Backward pass with an escalating regularization floor.
    BackwardPassResult bp;
    bool bp_ok = false;
    for (double mu = options.mu; mu <= options.mu_max; mu *= 10.0) {
      try {
        bp = backward_pass(problem, sol.trajectory, sol.nu, mu);
        bp_ok = true;
        break;
      } catch (const BackwardPassError&) {
        continue;
      }
    }
    if (!bp_ok) {
      if (++consecutive_failures >= 3) {
        sol.status = SolveStatus::Failed;
        break;
      }
      continue;
    }

    const LineSearchResult step =
        line_search(problem, sol.trajectory, bp.gains, bp.value.front(),
                    bp.value.back(), sol.nu, ls);
    if (step.failed) {
      if (++consecutive_failures >= 3) {
        sol.status = SolveStatus::Failed;
        break;
      }
      continue;
    }
    consecutive_failures = 0;

    sol.trajectory = step.traj;
    sol.nu = step.nu;
    sol.tf = step.tf;
    sol.cost = step.cost;

    IterationRecord rec;
    rec.iteration = iter;
    rec.cost = sol.cost;
    rec.tf = sol.tf;
    rec.nu = sol.nu;
    rec.psi_norm =
        problem.terminal->psi(sol.trajectory.x.back(), sol.tf).norm();
    rec.gamma_accepted = step.gamma;
    rec.zeta_accepted = step.zeta;
    rec.hamiltonian_residual = terminal_hamiltonian(problem, sol.trajectory, sol.nu);
    rec.merit = step.merit;
    rec.stalled = step.stalled;
    sol.records.push_back(rec);
    if (sink) sink(rec);

    const double rel_cost_change =
        std::abs(sol.cost - prev_cost) / std::max(1.0, std::abs(prev_cost));
    prev_cost = sol.cost;
    const bool satisfied = rel_cost_change < options.tol_cost_change &&
                           rec.psi_norm < options.tol_constraint &&
                           std::abs(step.delta_tf) < options.tol_tf_change;
    satisfied_streak = satisfied ? satisfied_streak + 1 : 0;
    if (satisfied_streak >= 2) {
      sol.status = SolveStatus::Converged;
      break;
    }
  }

  // A trailing run of no-progress stalls is reported as stalled rather than
  // as an iteration budget problem.
  if (sol.status == SolveStatus::MaxIterations && sol.records.size() >= 5) {
    bool all_stalled = true;
    const std::size_t start = sol.records.size() - 5;
    for (std::size_t i = start; i < sol.records.size(); ++i) {
      if (!sol.records[i].stalled) all_stalled = false;
    }
    const double drift = std::abs(sol.records.back().merit -
                                  sol.records[start].merit);
    if (all_stalled && drift < 1e-12 * std::max(1.0, std::abs(sol.cost))) {
      sol.status = SolveStatus::Stalled;
    }
  }

  sol.psi_norm = problem.terminal->psi(sol.trajectory.x.back(), sol.tf).norm();
  sol.hamiltonian_residual = terminal_hamiltonian(problem, sol.trajectory, sol.nu);
  return sol;
}

}  // namespace ftddp
