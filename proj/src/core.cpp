#include "ftddp/core.hpp"

#include <cmath>
#include <stdexcept>

namespace ftddp {

bool TrajectoryGrid::all_finite() const {
  if (!std::isfinite(tf)) return false;
  for (const auto& xi : x) {
    if (!xi.allFinite()) return false;
  }
  for (const auto& ui : u) {
    if (!ui.allFinite()) return false;
  }
  return true;
}

ValueExpansion ValueExpansion::zero(int n, int k) {
  ValueExpansion ve;
  ve.Vx = Eigen::VectorXd::Zero(n);
  ve.Vnu = Eigen::VectorXd::Zero(k);
  ve.Vxx = Eigen::MatrixXd::Zero(n, n);
  ve.Vnunu = Eigen::MatrixXd::Zero(k, k);
  ve.Vxnu = Eigen::MatrixXd::Zero(n, k);
  ve.Vxtf = Eigen::VectorXd::Zero(n);
  ve.Vnutf = Eigen::VectorXd::Zero(k);
  return ve;
}

void ValueExpansion::symmetrize() {
  Vxx = (0.5 * (Vxx + Vxx.transpose())).eval();
  Vnunu = (0.5 * (Vnunu + Vnunu.transpose())).eval();
}

bool ValueExpansion::all_finite() const {
  return std::isfinite(V) && std::isfinite(Vtf) && std::isfinite(Vtftf) &&
         Vx.allFinite() && Vnu.allFinite() && Vxx.allFinite() &&
         Vnunu.allFinite() && Vxnu.allFinite() && Vxtf.allFinite() &&
         Vnutf.allFinite();
}

void ProblemDefinition::validate() const {
  if (!dynamics || !running_cost || !terminal) {
    throw std::invalid_argument("ProblemDefinition: missing component");
  }
  if (x0.size() != dynamics->state_dim()) {
    throw std::invalid_argument("ProblemDefinition: x0 dimension mismatch");
  }
  if (nu_init.size() != terminal->constraint_dim()) {
    throw std::invalid_argument("ProblemDefinition: nu_init dimension mismatch");
  }
  if (!(tf_init > 0.0)) {
    throw std::invalid_argument("ProblemDefinition: tf_init must be positive");
  }
}

TrajectoryGrid regrid(const TrajectoryGrid& traj, double new_tf) {
  if (!(new_tf > 0.0)) {
    throw std::invalid_argument("regrid: new_tf must be positive");
  }
  TrajectoryGrid out = traj;
  out.tf = new_tf;
  return out;
}

double total_cost(const ProblemDefinition& problem, const TrajectoryGrid& traj,
                  const Eigen::VectorXd& nu) {
  const int N = traj.knot_count();
  if (N < 1 || static_cast<int>(traj.x.size()) != N + 1) {
    throw std::invalid_argument("total_cost: malformed trajectory grid");
  }
  if (traj.x[0].size() != problem.state_dim() ||
      traj.u[0].size() != problem.control_dim() ||
      nu.size() != problem.constraint_dim()) {
    throw std::invalid_argument("total_cost: dimension mismatch");
  }
  const RunningCost& rc = *problem.running_cost;
  const double dt = traj.dt();
  double integral = 0.0;
  for (int i = 0; i <= N; ++i) {
    const Eigen::VectorXd& ui = traj.u[std::min(i, N - 1)];
    const double li = rc.L(traj.x[i], ui, traj.time(i));
    integral += (i == 0 || i == N) ? 0.5 * li : li;
  }
  integral *= dt;

  const TerminalObjective& term = *problem.terminal;
  const double phi = term.phi(traj.x[N], traj.tf);
  const double constraint =
      problem.constraint_dim() > 0 ? nu.dot(term.psi(traj.x[N], traj.tf)) : 0.0;
  return integral + phi + constraint;
}

}  // namespace ftddp
