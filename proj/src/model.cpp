#include "ftddp/model.hpp"

#include <cmath>
#include <utility>

namespace ftddp {

QuadraticRunningCost::QuadraticRunningCost(double ct, Eigen::MatrixXd Q,
                                           Eigen::MatrixXd Ru,
                                           Eigen::VectorXd target)
    : ct_(ct), Q_(std::move(Q)), Ru_(std::move(Ru)), target_(std::move(target)) {
  if (Q_.rows() != Q_.cols() || Ru_.rows() != Ru_.cols() ||
      Q_.rows() != target_.size()) {
    throw std::invalid_argument("QuadraticRunningCost: inconsistent dimensions");
  }
}

double QuadraticRunningCost::L(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& u, double) const {
  const Eigen::VectorXd dx = x - target_;
  return 0.5 * (ct_ + dx.dot(Q_ * dx) + u.dot(Ru_ * u));
}

Eigen::VectorXd QuadraticRunningCost::Lx(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd&, double) const {
  return Q_ * (x - target_);
}

Eigen::VectorXd QuadraticRunningCost::Lu(const Eigen::VectorXd&,
                                         const Eigen::VectorXd& u,
                                         double) const {
  return Ru_ * u;
}

Eigen::MatrixXd QuadraticRunningCost::Lxx(const Eigen::VectorXd&,
                                          const Eigen::VectorXd&,
                                          double) const {
  return Q_;
}

Eigen::MatrixXd QuadraticRunningCost::Luu(const Eigen::VectorXd&,
                                          const Eigen::VectorXd&,
                                          double) const {
  return Ru_;
}

Eigen::MatrixXd QuadraticRunningCost::Lxu(const Eigen::VectorXd&,
                                          const Eigen::VectorXd&,
                                          double) const {
  return Eigen::MatrixXd::Zero(Q_.rows(), Ru_.rows());
}

namespace {

void check_finite(const Eigen::VectorXd& v, const char* what) {
  for (int i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw EvaluationError(std::string(what) +
                                ": non-finite value at coordinate " +
                                std::to_string(i),
                            i);
    }
  }
}

}  // namespace

void linearize(const DynamicsModel& model, const Eigen::VectorXd& x,
               const Eigen::VectorXd& u, double t, Eigen::MatrixXd& A,
               Eigen::MatrixXd& B) {
  const int n = model.state_dim();
  const int m = model.control_dim();
  if (model.has_analytic_jacobians()) {
    model.analytic_jacobians(x, u, t, A, B);
    return;
  }
  A.resize(n, n);
  B.resize(n, m);
  Eigen::VectorXd xp = x, xm = x, up = u, um = u;
  for (int j = 0; j < n; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const Eigen::VectorXd fp = model.f(xp, u, t);
    const Eigen::VectorXd fm = model.f(xm, u, t);
    check_finite(fp, "linearize");
    check_finite(fm, "linearize");
    A.col(j) = (fp - fm) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  for (int j = 0; j < m; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(u[j]));
    up[j] = u[j] + h;
    um[j] = u[j] - h;
    const Eigen::VectorXd fp = model.f(x, up, t);
    const Eigen::VectorXd fm = model.f(x, um, t);
    check_finite(fp, "linearize");
    check_finite(fm, "linearize");
    B.col(j) = (fp - fm) / (2.0 * h);
    up[j] = u[j];
    um[j] = u[j];
  }
}

double jacobian_self_test(const DynamicsModel& model,
                          const std::vector<Eigen::VectorXd>& states,
                          const std::vector<Eigen::VectorXd>& controls,
                          double t) {
  if (!model.has_analytic_jacobians()) return 0.0;
  const int n = model.state_dim();
  const int m = model.control_dim();
  double worst = 0.0;
  for (std::size_t p = 0; p < states.size(); ++p) {
    Eigen::MatrixXd Aa(n, n), Ba(n, m), Af(n, n), Bf(n, m);
    model.analytic_jacobians(states[p], controls[p], t, Aa, Ba);

    // Finite differences, forced by evaluating f directly.
    Eigen::VectorXd xp, xm, up, um;
    for (int j = 0; j < n; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(states[p][j]));
      xp = states[p];
      xm = states[p];
      xp[j] += h;
      xm[j] -= h;
      Af.col(j) = (model.f(xp, controls[p], t) - model.f(xm, controls[p], t)) /
                  (2.0 * h);
    }
    for (int j = 0; j < m; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(controls[p][j]));
      up = controls[p];
      um = controls[p];
      up[j] += h;
      um[j] -= h;
      Bf.col(j) = (model.f(states[p], up, t) - model.f(states[p], um, t)) /
                  (2.0 * h);
    }
    const double scale_a = std::max(1.0, Aa.cwiseAbs().maxCoeff());
    const double scale_b = std::max(1.0, Ba.cwiseAbs().maxCoeff());
    worst = std::max(worst, (Aa - Af).cwiseAbs().maxCoeff() / scale_a);
    worst = std::max(worst, (Ba - Bf).cwiseAbs().maxCoeff() / scale_b);
  }
  return worst;
}

}  // namespace ftddp
