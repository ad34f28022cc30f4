#include "ftddp/backward.hpp"

#include <cmath>
#include <string>

namespace ftddp {

namespace {

KnotDerivatives lerp(const KnotDerivatives& a, const KnotDerivatives& b,
                     double alpha) {
  if (alpha == 0.0) return a;
  if (alpha == 1.0) return b;
  const double w = 1.0 - alpha;
  KnotDerivatives out;
  out.A = w * a.A + alpha * b.A;
  out.B = w * a.B + alpha * b.B;
  out.f = w * a.f + alpha * b.f;
  out.L = w * a.L + alpha * b.L;
  out.Lx = w * a.Lx + alpha * b.Lx;
  out.Lu = w * a.Lu + alpha * b.Lu;
  out.Lxx = w * a.Lxx + alpha * b.Lxx;
  out.Luu = w * a.Luu + alpha * b.Luu;
  out.Lxu = w * a.Lxu + alpha * b.Lxu;
  return out;
}

// Right-hand sides of the backward system, written in reverse time so that
// d(.)/dtau equals the -d(.)/dt expressions.
ValueExpansion rhs(const KnotDerivatives& kd, const ValueExpansion& ve,
                   const Gains& g) {
  ValueExpansion d;
  const Eigen::MatrixXd At = kd.A.transpose();
  const Eigen::VectorXd Luu_l = kd.Luu * g.l;

  d.V = kd.L - 0.5 * g.l.dot(Luu_l);
  d.Vx = kd.Lx - g.Kx.transpose() * Luu_l + At * ve.Vx;
  d.Vnu = g.Knu.transpose() * kd.Lu;
  d.Vtf = g.Ktf.dot(kd.Lu);
  d.Vxx = kd.Lxx - g.Kx.transpose() * kd.Luu * g.Kx + At * ve.Vxx + ve.Vxx * kd.A;
  d.Vnunu = -g.Knu.transpose() * kd.Luu * g.Knu;
  d.Vtftf = -g.Ktf.dot(kd.Luu * g.Ktf);
  d.Vxnu = kd.Lxu * g.Knu + At * ve.Vxnu + ve.Vxx * kd.B * g.Knu;
  d.Vxtf = kd.Lxu * g.Ktf + At * ve.Vxtf + ve.Vxx * kd.B * g.Ktf;
  d.Vnutf = g.Knu.transpose() * kd.B.transpose() * ve.Vxtf;
  return d;
}

void axpy(ValueExpansion& acc, double a, const ValueExpansion& d) {
  acc.V += a * d.V;
  acc.Vx += a * d.Vx;
  acc.Vnu += a * d.Vnu;
  acc.Vtf += a * d.Vtf;
  acc.Vxx += a * d.Vxx;
  acc.Vnunu += a * d.Vnunu;
  acc.Vtftf += a * d.Vtftf;
  acc.Vxnu += a * d.Vxnu;
  acc.Vxtf += a * d.Vxtf;
  acc.Vnutf += a * d.Vnutf;
}

}  // namespace

std::vector<KnotDerivatives> evaluate_knot_derivatives(
    const ProblemDefinition& problem, const TrajectoryGrid& traj) {
  const int N = traj.knot_count();
  const DynamicsModel& dyn = *problem.dynamics;
  const RunningCost& rc = *problem.running_cost;
  std::vector<KnotDerivatives> out(N + 1);
  for (int i = 0; i <= N; ++i) {
    const Eigen::VectorXd& xi = traj.x[i];
    const Eigen::VectorXd& ui = traj.u[std::min(i, N - 1)];
    const double ti = traj.time(i);
    KnotDerivatives& kd = out[i];
    linearize(dyn, xi, ui, ti, kd.A, kd.B);
    kd.f = dyn.f(xi, ui, ti);
    kd.L = rc.L(xi, ui, ti);
    kd.Lx = rc.Lx(xi, ui, ti);
    kd.Lu = rc.Lu(xi, ui, ti);
    kd.Lxx = rc.Lxx(xi, ui, ti);
    kd.Luu = rc.Luu(xi, ui, ti);
    kd.Lxu = rc.Lxu(xi, ui, ti);
  }
  return out;
}

ValueExpansion terminal_conditions(const ProblemDefinition& problem,
                                   const TrajectoryGrid& traj,
                                   const Eigen::VectorXd& nu, double tf) {
  const int N = traj.knot_count();
  const int n = problem.state_dim();
  const int k = problem.constraint_dim();
  const Eigen::VectorXd& xN = traj.x[N];
  const Eigen::VectorXd& uN = traj.u[N - 1];
  const TerminalObjective& term = *problem.terminal;

  const Eigen::VectorXd F = problem.dynamics->f(xN, uN, tf);
  const double L = problem.running_cost->L(xN, uN, tf);

  const Eigen::VectorXd psi = term.psi(xN, tf);
  const Eigen::MatrixXd psi_x = term.psi_x(xN, tf);
  const Eigen::VectorXd psi_tf = term.psi_tf(xN, tf);

  // Phi = phi + nu' psi; psi is first-order in x and tf, so the Phi blocks
  // in x and tf reduce to the phi blocks.
  const double phi = term.phi(xN, tf);
  const Eigen::VectorXd Phi_x = term.phi_x(xN, tf) + psi_x.transpose() * nu;
  const Eigen::MatrixXd Phi_xx = term.phi_xx(xN, tf);
  const double Phi_tf = term.phi_tf(xN, tf) + nu.dot(psi_tf);
  const Eigen::VectorXd Phi_xtf = term.phi_xtf(xN, tf);
  const double Phi_tftf = term.phi_tftf(xN, tf);

  ValueExpansion ve = ValueExpansion::zero(n, k);
  ve.V = phi + nu.dot(psi);
  ve.Vx = Phi_x;
  ve.Vnu = psi;
  ve.Vtf = L + Phi_x.dot(F) + Phi_tf;
  ve.Vxx = Phi_xx;
  ve.Vnunu = Eigen::MatrixXd::Zero(k, k);
  ve.Vtftf = Phi_tftf + 2.0 * Phi_xtf.dot(F) + F.dot(Phi_xx * F);
  ve.Vxnu = psi_x.transpose();
  ve.Vxtf = Phi_xtf + Phi_xx * F;
  ve.Vnutf = psi_tf + psi_x * F;
  ve.symmetrize();
  if (!ve.all_finite()) {
    throw BackwardPassError("terminal conditions are non-finite", N);
  }
  return ve;
}

Gains compute_gains(const KnotDerivatives& kd, const ValueExpansion& ve,
                    double mu) {
  const int m = static_cast<int>(kd.Luu.rows());
  Eigen::MatrixXd Luu = 0.5 * (kd.Luu + kd.Luu.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Luu);
  if (eig.eigenvalues().minCoeff() < mu) {
    Luu += mu * Eigen::MatrixXd::Identity(m, m);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> shifted(Luu);
    if (shifted.eigenvalues().minCoeff() <= 0.0) {
      throw BackwardPassError("Luu singular beyond regularization floor", -1);
    }
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(Luu);

  const Eigen::MatrixXd Bt = kd.B.transpose();
  const Eigen::MatrixXd Lux = kd.Lxu.transpose();
  Gains g;
  g.l = -llt.solve(kd.Lu + Bt * ve.Vx);
  g.Kx = -llt.solve(0.5 * Lux + 0.5 * kd.Lxu.transpose() + Bt * ve.Vxx);
  g.Knu = -llt.solve(Bt * ve.Vxnu);
  g.Ktf = -llt.solve(Bt * ve.Vxtf);
  return g;
}

BackwardPassResult backward_pass(const ProblemDefinition& problem,
                                 const TrajectoryGrid& traj,
                                 const Eigen::VectorXd& nu, double mu) {
  const int N = traj.knot_count();
  const double dt = traj.dt();
  const std::vector<KnotDerivatives> kds =
      evaluate_knot_derivatives(problem, traj);

  BackwardPassResult result;
  result.value.resize(N + 1);
  result.gains.l.resize(N);
  result.gains.Kx.resize(N);
  result.gains.Knu.resize(N);
  result.gains.Ktf.resize(N);

  result.value[N] = terminal_conditions(problem, traj, nu, traj.tf);

  ValueExpansion ve = result.value[N];
  for (int i = N - 1; i >= 0; --i) {
    const KnotDerivatives& kd_lo = kds[i];
    const KnotDerivatives& kd_hi = kds[i + 1];
    const KnotDerivatives kd_mid = lerp(kd_lo, kd_hi, 0.5);

    // Classical RK4 in reverse time over [t_i, t_{i+1}].
    const ValueExpansion k1 = rhs(kd_hi, ve, compute_gains(kd_hi, ve, mu));
    ValueExpansion s = ve;
    axpy(s, 0.5 * dt, k1);
    const ValueExpansion k2 = rhs(kd_mid, s, compute_gains(kd_mid, s, mu));
    s = ve;
    axpy(s, 0.5 * dt, k2);
    const ValueExpansion k3 = rhs(kd_mid, s, compute_gains(kd_mid, s, mu));
    s = ve;
    axpy(s, dt, k3);
    const ValueExpansion k4 = rhs(kd_lo, s, compute_gains(kd_lo, s, mu));

    axpy(ve, dt / 6.0, k1);
    axpy(ve, dt / 3.0, k2);
    axpy(ve, dt / 3.0, k3);
    axpy(ve, dt / 6.0, k4);
    ve.symmetrize();
    if (!ve.all_finite()) {
      throw BackwardPassError(
          "value expansion diverged at knot " + std::to_string(i), i);
    }
    result.value[i] = ve;
  }
  for (int i = 0; i < N; ++i) {
    const Gains g = compute_gains(kds[i], result.value[i], mu);
    result.gains.l[i] = g.l;
    result.gains.Kx[i] = g.Kx;
    result.gains.Knu[i] = g.Knu;
    result.gains.Ktf[i] = g.Ktf;
  }
  return result;
}

}  // namespace ftddp
