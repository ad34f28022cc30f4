#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ftddp {

/// Thrown when a dynamics or cost evaluation produces a non-finite value.
struct EvaluationError : std::runtime_error {
  EvaluationError(const std::string& what, int coord)
      : std::runtime_error(what), coordinate(coord) {}
  int coordinate = -1;
};

/// Continuous-time dynamics dx/dt = f(x, u, t).
///
/// Implementations may supply analytic Jacobians; otherwise linearize()
/// falls back to central finite differences.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;

  virtual Eigen::VectorXd f(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                            double t) const = 0;

  virtual bool has_analytic_jacobians() const { return false; }
  virtual void analytic_jacobians(const Eigen::VectorXd& /*x*/,
                                  const Eigen::VectorXd& /*u*/, double /*t*/,
                                  Eigen::MatrixXd& /*A*/,
                                  Eigen::MatrixXd& /*B*/) const {
    throw std::logic_error("model does not provide analytic Jacobians");
  }
};

/// Running cost L(x, u, t) with first and second derivatives.
class RunningCost {
 public:
  virtual ~RunningCost() = default;

  virtual double L(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                   double t) const = 0;
  virtual Eigen::VectorXd Lx(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                             double t) const = 0;
  virtual Eigen::VectorXd Lu(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                             double t) const = 0;
  virtual Eigen::MatrixXd Lxx(const Eigen::VectorXd& x,
                              const Eigen::VectorXd& u, double t) const = 0;
  virtual Eigen::MatrixXd Luu(const Eigen::VectorXd& x,
                              const Eigen::VectorXd& u, double t) const = 0;
  virtual Eigen::MatrixXd Lxu(const Eigen::VectorXd& x,
                              const Eigen::VectorXd& u, double t) const = 0;
};

/// L = (ct + (x-p)' Q (x-p) + u' Ru u) / 2, the standard quadratic form with
/// a constant time cost ct.
class QuadraticRunningCost : public RunningCost {
 public:
  QuadraticRunningCost(double ct, Eigen::MatrixXd Q, Eigen::MatrixXd Ru,
                       Eigen::VectorXd target);

  double L(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
           double t) const override;
  Eigen::VectorXd Lx(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                     double t) const override;
  Eigen::VectorXd Lu(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                     double t) const override;
  Eigen::MatrixXd Lxx(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                      double t) const override;
  Eigen::MatrixXd Luu(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                      double t) const override;
  Eigen::MatrixXd Lxu(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                      double t) const override;

  double time_cost() const { return ct_; }

 private:
  double ct_;
  Eigen::MatrixXd Q_;
  Eigen::MatrixXd Ru_;
  Eigen::VectorXd target_;
};

/// Terminal objective: scalar cost phi(x, tf) plus a k-vector equality
/// constraint psi(x, tf) = 0 enforced through Lagrange multipliers.
///
/// psi carries first derivatives only; the combined Phi = phi + nu' psi is
/// affine in nu by construction.
class TerminalObjective {
 public:
  virtual ~TerminalObjective() = default;

  virtual int constraint_dim() const = 0;

  virtual double phi(const Eigen::VectorXd& x, double tf) const = 0;
  virtual Eigen::VectorXd phi_x(const Eigen::VectorXd& x, double tf) const = 0;
  virtual Eigen::MatrixXd phi_xx(const Eigen::VectorXd& x, double tf) const = 0;
  virtual double phi_tf(const Eigen::VectorXd& x, double tf) const = 0;
  virtual Eigen::VectorXd phi_xtf(const Eigen::VectorXd& x, double tf) const = 0;
  virtual double phi_tftf(const Eigen::VectorXd& x, double tf) const = 0;

  virtual Eigen::VectorXd psi(const Eigen::VectorXd& x, double tf) const = 0;
  /// k x n Jacobian of psi with respect to x.
  virtual Eigen::MatrixXd psi_x(const Eigen::VectorXd& x, double tf) const = 0;
  virtual Eigen::VectorXd psi_tf(const Eigen::VectorXd& x, double tf) const = 0;
};

/// Terminal objective with zero cost and zero constraints (k = 0).
class FreeTerminalObjective : public TerminalObjective {
 public:
  explicit FreeTerminalObjective(int state_dim) : n_(state_dim) {}

  int constraint_dim() const override { return 0; }
  double phi(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd phi_x(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(n_);
  }
  Eigen::MatrixXd phi_xx(const Eigen::VectorXd&, double) const override {
    return Eigen::MatrixXd::Zero(n_, n_);
  }
  double phi_tf(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd phi_xtf(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(n_);
  }
  double phi_tftf(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd psi(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(0);
  }
  Eigen::MatrixXd psi_x(const Eigen::VectorXd&, double) const override {
    return Eigen::MatrixXd::Zero(0, n_);
  }
  Eigen::VectorXd psi_tf(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(0);
  }

 private:
  int n_;
};

/// Jacobians of the dynamics at (x, u, t): analytic when the model provides
/// them, otherwise central differences with step 1e-6 * max(1, |coord|).
void linearize(const DynamicsModel& model, const Eigen::VectorXd& x,
               const Eigen::VectorXd& u, double t, Eigen::MatrixXd& A,
               Eigen::MatrixXd& B);

/// Max relative error between analytic and finite-difference Jacobians at the
/// given points. Used by model self-tests.
double jacobian_self_test(const DynamicsModel& model,
                          const std::vector<Eigen::VectorXd>& states,
                          const std::vector<Eigen::VectorXd>& controls,
                          double t = 0.0);

}  // namespace ftddp
