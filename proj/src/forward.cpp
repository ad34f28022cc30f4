#include "ftddp/forward.hpp"

#include <algorithm>
#include <cmath>

namespace ftddp {

namespace {

constexpr double kDivergenceBound = 1e8;

Eigen::VectorXd rk4_step(const DynamicsModel& dyn, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& u, double t, double dt) {
  const Eigen::VectorXd k1 = dyn.f(x, u, t);
  const Eigen::VectorXd k2 = dyn.f(x + 0.5 * dt * k1, u, t + 0.5 * dt);
  const Eigen::VectorXd k3 = dyn.f(x + 0.5 * dt * k2, u, t + 0.5 * dt);
  const Eigen::VectorXd k4 = dyn.f(x + dt * k3, u, t + dt);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

TrajectoryGrid integrate_controls(const ProblemDefinition& problem,
                                  const std::vector<Eigen::VectorXd>& controls,
                                  double tf) {
  const int N = static_cast<int>(controls.size());
  TrajectoryGrid traj;
  traj.tf = tf;
  traj.u = controls;
  traj.x.resize(N + 1);
  traj.x[0] = problem.x0;
  const double dt = traj.dt();
  for (int i = 0; i < N; ++i) {
    traj.x[i + 1] =
        rk4_step(*problem.dynamics, traj.x[i], traj.u[i], i * dt, dt);
  }
  return traj;
}

MultiplierTimeUpdate update_multiplier_time(const ValueExpansion& ve0,
                                            const ValueExpansion& veT,
                                            double zeta, double tf,
                                            const Eigen::VectorXd& nu,
                                            const MultiplierTimeOptions& opts) {
  const int k = static_cast<int>(ve0.Vnu.size());
  MultiplierTimeUpdate out;
  out.delta_nu = Eigen::VectorXd::Zero(k);

  Eigen::MatrixXd M(k + 1, k + 1);
  M.topLeftCorner(k, k) = ve0.Vnunu;
  M.topRightCorner(k, 1) = ve0.Vnutf;
  M.bottomLeftCorner(1, k) = ve0.Vnutf.transpose();
  M(k, k) = ve0.Vtftf;
  M = (0.5 * (M + M.transpose())).eval();

  Eigen::VectorXd r(k + 1);
  r.head(k) = veT.Vnu;
  r[k] = veT.Vtf;

  // Eigen solve with regularized curvature: directions with no curvature
  // information at all are dropped, and small magnitudes are floored so a
  // near-singular direction yields a bounded step instead of a wild one.
  const auto truncated_solve = [&](const Eigen::MatrixXd& sys,
                                   const Eigen::VectorXd& rhs, int* dropped) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double lambda_max = lambda.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
    const double floor = std::max(opts.mu_m, opts.cond_floor * lambda_max);
    for (int i = 0; i < lambda.size(); ++i) {
      const double mag = std::abs(lambda[i]);
      if (mag < opts.mu_m) {
        if (dropped) ++*dropped;
      } else {
        inv[i] = std::copysign(1.0 / std::max(mag, floor), lambda[i]);
      }
    }
    return Eigen::VectorXd(-zeta * (eig.eigenvectors() * inv.asDiagonal() *
                                    eig.eigenvectors().transpose() * rhs));
  };

  if (M.cwiseAbs().maxCoeff() < opts.mu_m) {
    out.held = true;
    out.truncated = k + 1;
    return out;
  }

  Eigen::VectorXd delta = truncated_solve(M, r, &out.truncated);

  // While the terminal constraint is far from satisfied the transversality
  // residual is not meaningful and the coupled solve both chases it and
  // starves the multiplier update. Until near-feasibility the multiplier
  // step comes from the constraint block alone, and the horizon may only
  // grow (a longer horizon relaxes the problem; a shorter one can make it
  // unreachable).
  const bool infeasible =
      k > 0 && veT.Vnu.norm() > opts.tf_freeze_residual;
  if (infeasible) {
    Eigen::MatrixXd block = M.topLeftCorner(k, k);
    Eigen::VectorXd r_nu = r.head(k);
    const double dtf_grow = std::max(0.0, delta[k]);
    out.truncated = 0;
    if (block.cwiseAbs().maxCoeff() < opts.mu_m) {
      out.held = true;
      out.truncated = k + 1;
      return out;
    }
    delta.head(k) = truncated_solve(block, r_nu, &out.truncated);
    delta[k] = dtf_grow;
  }

  // Trust caps: the horizon step is clamped, the multiplier block is
  // scaled as a unit.
  double scale = 1.0;
  const double dtf_cap = opts.dtf_cap_frac * tf;
  delta[k] = std::clamp(delta[k], -dtf_cap, dtf_cap);
  if (k > 0) {
    const double dnu_inf = delta.head(k).cwiseAbs().maxCoeff();
    if (dnu_inf > opts.dnu_cap) scale = opts.dnu_cap / dnu_inf;
    delta.head(k) *= scale;
  }
  out.step_scale = scale;
  out.delta_nu = delta.head(k);
  out.delta_tf = delta[k];
  return out;
}

RolloutResult rollout(const ProblemDefinition& problem,
                      const TrajectoryGrid& prev, const GainSchedule& gains,
                      const StepProposal& proposal, const Eigen::VectorXd& nu) {
  const int N = prev.knot_count();
  if (gains.knot_count() != N) {
    throw std::invalid_argument("rollout: gain schedule does not match grid");
  }
  RolloutResult out;
  out.traj = regrid(prev, prev.tf + proposal.delta_tf);
  const double dt = out.traj.dt();
  out.traj.x[0] = problem.x0;
  for (int i = 0; i < N; ++i) {
    const Eigen::VectorXd dx = out.traj.x[i] - prev.x[i];
    // gamma scales the feedforward; the state feedback runs at full
    // strength so rollouts stay anchored to the nominal, and the
    // multiplier/horizon channels carry their own zeta damping.
    out.traj.u[i] = prev.u[i] + proposal.gamma * gains.l[i] +
                    gains.Kx[i] * dx + gains.Knu[i] * proposal.delta_nu +
                    gains.Ktf[i] * proposal.delta_tf;
    out.traj.x[i + 1] =
        rk4_step(*problem.dynamics, out.traj.x[i], out.traj.u[i], i * dt, dt);
    if (!out.traj.x[i + 1].allFinite() ||
        out.traj.x[i + 1].cwiseAbs().maxCoeff() > kDivergenceBound) {
      out.diverged = true;
      return out;
    }
  }
  out.cost = total_cost(problem, out.traj, nu);
  if (!std::isfinite(out.cost)) out.diverged = true;
  return out;
}

LineSearchResult line_search(const ProblemDefinition& problem,
                             const TrajectoryGrid& prev,
                             const GainSchedule& gains,
                             const ValueExpansion& ve0,
                             const ValueExpansion& veT,
                             const Eigen::VectorXd& nu,
                             const LineSearchOptions& opts) {
  const MultiplierTimeUpdate full = update_multiplier_time(
      ve0, veT, opts.epsilon, prev.tf, nu, opts.update);

  // Exact-penalty weight, fixed across candidates for a fair comparison.
  const auto inf_norm = [](const Eigen::VectorXd& v) {
    return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0;
  };
  const double rho =
      1.0 + 2.0 * std::max(inf_norm(nu), inf_norm(nu + full.delta_nu));

  // The merit pairs the multiplier-free objective with the l1 penalty;
  // rho >= |nu|_inf + 1 keeps it a majorant of the Lagrangian cost. Folding
  // nu' psi into the merit instead would penalize every dual-ascent step.
  const auto merit_of = [&](const TrajectoryGrid& traj, double cost,
                            const Eigen::VectorXd& nu_used) {
    const Eigen::VectorXd psi = problem.terminal->psi(traj.x.back(), traj.tf);
    const double objective = cost - nu_used.dot(psi);
    return objective + rho * psi.lpNorm<1>();
  };
  const double current_merit =
      merit_of(prev, total_cost(problem, prev, nu), nu);
  const double decrease_tol = 1e-12 * std::max(1.0, std::abs(current_merit));

  LineSearchResult best;
  best.failed = true;

  for (int j = 0; j <= opts.max_halvings; ++j) {
    const double s = std::ldexp(1.0, -j);  // 2^-j
    StepProposal proposal;
    proposal.gamma = opts.gamma_max * s;
    proposal.zeta = opts.epsilon * s;
    proposal.delta_nu = s * full.delta_nu;
    const double tf_target =
        std::clamp(prev.tf + s * full.delta_tf, opts.t_min, opts.t_max);
    proposal.delta_tf = tf_target - prev.tf;

    const Eigen::VectorXd nu_trial = nu + proposal.delta_nu;
    const RolloutResult trial = rollout(problem, prev, gains, proposal, nu_trial);
    if (trial.diverged) continue;

    const double trial_merit = merit_of(trial.traj, trial.cost, nu_trial);
    if (trial_merit < current_merit - decrease_tol) {
      return {trial.traj, nu_trial,      trial.traj.tf, trial.cost,
              trial_merit, proposal.gamma, proposal.zeta, proposal.delta_tf,
              false,       false};
    }
    // No candidate achieves a decrease: the largest-gamma finite candidate
    // is accepted with a stall flag. Merit descent does not capture the
    // dual-ascent phase, so refusing to move would freeze the solve.
    if (best.failed) {
      best = {trial.traj, nu_trial,      trial.traj.tf, trial.cost,
              trial_merit, proposal.gamma, proposal.zeta, proposal.delta_tf,
              true,        false};
    }
  }
  return best;
}

}  // namespace ftddp
