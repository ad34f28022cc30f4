#include "ftddp/models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace ftddp::models {

namespace {

// ---------------------------------------------------------------------------
// Double integrator

class DoubleIntegratorDynamics : public DynamicsModel {
 public:
  int state_dim() const override { return 2; }
  int control_dim() const override { return 1; }

  Eigen::VectorXd f(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                    double) const override {
    Eigen::VectorXd out(2);
    out << x[1], u[0];
    return out;
  }

  bool has_analytic_jacobians() const override { return true; }
  void analytic_jacobians(const Eigen::VectorXd&, const Eigen::VectorXd&,
                          double, Eigen::MatrixXd& A,
                          Eigen::MatrixXd& B) const override {
    A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 1) = 1.0;
    B = Eigen::MatrixXd::Zero(2, 1);
    B(1, 0) = 1.0;
  }
};

// psi = x1 - 1, phi = 0.
class DoubleIntegratorTerminal : public TerminalObjective {
 public:
  int constraint_dim() const override { return 1; }
  double phi(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd phi_x(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(2);
  }
  Eigen::MatrixXd phi_xx(const Eigen::VectorXd&, double) const override {
    return Eigen::MatrixXd::Zero(2, 2);
  }
  double phi_tf(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd phi_xtf(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(2);
  }
  double phi_tftf(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd psi(const Eigen::VectorXd& x, double) const override {
    Eigen::VectorXd out(1);
    out[0] = x[0] - 1.0;
    return out;
  }
  Eigen::MatrixXd psi_x(const Eigen::VectorXd&, double) const override {
    Eigen::MatrixXd out(1, 2);
    out << 1.0, 0.0;
    return out;
  }
  Eigen::VectorXd psi_tf(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(1);
  }
};

// ---------------------------------------------------------------------------
// Cart pole

struct CartPoleParams {
  double M, m, l, g;
};

class CartPoleDynamics : public DynamicsModel {
 public:
  explicit CartPoleDynamics(const CartPoleParams& p) : p_(p) {}

  int state_dim() const override { return 4; }
  int control_dim() const override { return 1; }

  Eigen::VectorXd f(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                    double) const override {
    const double s = std::sin(x[2]);
    const double c = std::cos(x[2]);
    const double w = x[3];
    const double D = p_.M + p_.m * s * s;
    Eigen::VectorXd out(4);
    out[0] = x[1];
    out[1] = (u[0] + p_.m * s * (p_.l * w * w - p_.g * c)) / D;
    out[2] = w;
    out[3] = (-u[0] * c - p_.m * p_.l * w * w * s * c + (p_.M + p_.m) * p_.g * s) /
             (p_.l * D);
    return out;
  }

  bool has_analytic_jacobians() const override { return true; }
  void analytic_jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          double, Eigen::MatrixXd& A,
                          Eigen::MatrixXd& B) const override {
    const double s = std::sin(x[2]);
    const double c = std::cos(x[2]);
    const double w = x[3];
    const double c2 = c * c - s * s;  // cos(2 theta)
    const double D = p_.M + p_.m * s * s;
    const double Dth = 2.0 * p_.m * s * c;

    const double n2 = u[0] + p_.m * s * (p_.l * w * w - p_.g * c);
    const double n2_th = p_.m * (c * p_.l * w * w - p_.g * c2);
    const double n2_w = 2.0 * p_.m * s * p_.l * w;

    const double n4 =
        -u[0] * c - p_.m * p_.l * w * w * s * c + (p_.M + p_.m) * p_.g * s;
    const double n4_th = u[0] * s - p_.m * p_.l * w * w * c2 + (p_.M + p_.m) * p_.g * c;
    const double n4_w = -2.0 * p_.m * p_.l * w * s * c;

    A = Eigen::MatrixXd::Zero(4, 4);
    A(0, 1) = 1.0;
    A(1, 2) = (n2_th * D - n2 * Dth) / (D * D);
    A(1, 3) = n2_w / D;
    A(2, 3) = 1.0;
    A(3, 2) = (n4_th * D - n4 * Dth) / (p_.l * D * D);
    A(3, 3) = n4_w / (p_.l * D);

    B = Eigen::MatrixXd::Zero(4, 1);
    B(1, 0) = 1.0 / D;
    B(3, 0) = -c / (p_.l * D);
  }

 private:
  CartPoleParams p_;
};

// psi = [theta; thetadot] - [p3; p4], phi = 0.
class CartPoleTerminal : public TerminalObjective {
 public:
  explicit CartPoleTerminal(Eigen::VectorXd target)
      : target_(std::move(target)) {}

  int constraint_dim() const override { return 2; }
  double phi(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd phi_x(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(4);
  }
  Eigen::MatrixXd phi_xx(const Eigen::VectorXd&, double) const override {
    return Eigen::MatrixXd::Zero(4, 4);
  }
  double phi_tf(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd phi_xtf(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(4);
  }
  double phi_tftf(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd psi(const Eigen::VectorXd& x, double) const override {
    Eigen::VectorXd out(2);
    out << x[2] - target_[2], x[3] - target_[3];
    return out;
  }
  Eigen::MatrixXd psi_x(const Eigen::VectorXd&, double) const override {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2, 4);
    out(0, 2) = 1.0;
    out(1, 3) = 1.0;
    return out;
  }
  Eigen::VectorXd psi_tf(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(2);
  }

 private:
  Eigen::VectorXd target_;
};

// ---------------------------------------------------------------------------
// Quadrotor

struct QuadParams {
  double mass = 1.0;
  double g = 9.8;
  double arm = 0.2;        // moment arm
  double kyaw = 0.02;      // yaw moment per unit motor force
  double tau = 0.05;       // motor time constant
  Eigen::Vector3d J = Eigen::Vector3d(0.01, 0.01, 0.02);
};

// State: [r(3), euler(3) = (roll, pitch, yaw), v(3), omega(3), motors(4)].
// Motor states are per-rotor forces driven first-order toward the mixed
// command, so dx/dt = f(x) + G u with constant G.
class QuadrotorDynamics : public DynamicsModel {
 public:
  explicit QuadrotorDynamics(const QuadParams& p) : p_(p) {
    // Rows map motor forces to [total thrust, roll, pitch, yaw moments].
    mix_ << 1.0, 1.0, 1.0, 1.0,
        0.0, -p_.arm, 0.0, p_.arm,
        -p_.arm, 0.0, p_.arm, 0.0,
        p_.kyaw, -p_.kyaw, p_.kyaw, -p_.kyaw;
    mix_inv_ = mix_.inverse();
  }

  int state_dim() const override { return 16; }
  int control_dim() const override { return 4; }

  Eigen::VectorXd f(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                    double) const override {
    const double phi = x[3], theta = x[4], psi = x[5];
    const Eigen::Vector3d v = x.segment<3>(6);
    const Eigen::Vector3d w = x.segment<3>(9);
    const Eigen::Vector4d motors = x.segment<4>(12);

    const double sph = std::sin(phi), cph = std::cos(phi);
    const double sth = std::sin(theta), cth = std::cos(theta);
    const double sps = std::sin(psi), cps = std::cos(psi);

    const Eigen::Vector4d wrench = mix_ * motors;  // [T, Mx, My, Mz]
    const double T = wrench[0];

    // Third column of Rz(psi) Ry(theta) Rx(phi): body z axis in world frame.
    const Eigen::Vector3d body_z(cps * sth * cph + sps * sph,
                                 sps * sth * cph - cps * sph, cth * cph);

    // Euler angle rates from body rates.
    const double tth = sth / cth;
    Eigen::Vector3d euler_rates(w[0] + sph * tth * w[1] + cph * tth * w[2],
                                cph * w[1] - sph * w[2],
                                (sph * w[1] + cph * w[2]) / cth);

    const Eigen::Vector3d Jw(p_.J[0] * w[0], p_.J[1] * w[1], p_.J[2] * w[2]);
    const Eigen::Vector3d torque = wrench.tail<3>() - w.cross(Jw);

    Eigen::VectorXd out(16);
    out.segment<3>(0) = v;
    out.segment<3>(3) = euler_rates;
    out.segment<3>(6) =
        Eigen::Vector3d(0.0, 0.0, -p_.g) + (T / p_.mass) * body_z;
    out.segment<3>(9) = torque.cwiseQuotient(p_.J);
    out.segment<4>(12) = (mix_inv_ * u - motors) / p_.tau;
    return out;
  }

 private:
  QuadParams p_;
  Eigen::Matrix4d mix_;
  Eigen::Matrix4d mix_inv_;
};

// phi = (x - p)' Qf (x - p) / 2, psi = first six states minus targets.
class QuadrotorTerminal : public TerminalObjective {
 public:
  QuadrotorTerminal(Eigen::MatrixXd Qf, Eigen::VectorXd target)
      : Qf_(std::move(Qf)), target_(std::move(target)) {}

  int constraint_dim() const override { return 6; }
  double phi(const Eigen::VectorXd& x, double) const override {
    const Eigen::VectorXd dx = x - target_;
    return 0.5 * dx.dot(Qf_ * dx);
  }
  Eigen::VectorXd phi_x(const Eigen::VectorXd& x, double) const override {
    return Qf_ * (x - target_);
  }
  Eigen::MatrixXd phi_xx(const Eigen::VectorXd&, double) const override {
    return Qf_;
  }
  double phi_tf(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd phi_xtf(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(16);
  }
  double phi_tftf(const Eigen::VectorXd&, double) const override { return 0.0; }
  Eigen::VectorXd psi(const Eigen::VectorXd& x, double) const override {
    return x.head<6>() - target_.head<6>();
  }
  Eigen::MatrixXd psi_x(const Eigen::VectorXd&, double) const override {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(6, 16);
    out.leftCols<6>().setIdentity();
    return out;
  }
  Eigen::VectorXd psi_tf(const Eigen::VectorXd&, double) const override {
    return Eigen::VectorXd::Zero(6);
  }

 private:
  Eigen::MatrixXd Qf_;
  Eigen::VectorXd target_;
};

}  // namespace

ProblemDefinition double_integrator(double R) {
  if (!(R > 0.0)) {
    throw std::invalid_argument("double_integrator: R must be positive");
  }
  ProblemDefinition problem;
  problem.dynamics = std::make_shared<DoubleIntegratorDynamics>();
  // ct = 2 makes the integrand 1 + R u^2 / 2.
  problem.running_cost = std::make_shared<QuadraticRunningCost>(
      2.0, Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Constant(1, 1, R),
      Eigen::VectorXd::Zero(2));
  problem.terminal = std::make_shared<DoubleIntegratorTerminal>();
  problem.x0 = Eigen::VectorXd::Zero(2);
  problem.nu_init = Eigen::VectorXd::Zero(1);
  problem.tf_init = 1.0;
  return problem;
}

ProblemDefinition cart_pole(const ModelParams& params) {
  ProblemDefinition problem;
  problem.dynamics = std::make_shared<CartPoleDynamics>(CartPoleParams{
      params.cart_mass, params.pole_mass, params.pole_length, params.gravity});
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(4, 4);
  Q(2, 2) = 1.0;
  Q(3, 3) = 1.0;
  const Eigen::VectorXd target = Eigen::VectorXd::Zero(4);
  problem.running_cost = std::make_shared<QuadraticRunningCost>(
      params.ct, Q, Eigen::MatrixXd::Constant(1, 1, 0.01), target);
  problem.terminal = std::make_shared<CartPoleTerminal>(target);
  problem.x0 = Eigen::VectorXd::Zero(4);
  problem.x0[2] = M_PI;
  problem.nu_init = Eigen::VectorXd::Zero(2);
  problem.tf_init = 1.0;
  return problem;
}

ProblemDefinition quadrotor(const ModelParams& params) {
  ProblemDefinition problem;
  problem.dynamics = std::make_shared<QuadrotorDynamics>(QuadParams{});

  Eigen::VectorXd qf_diag(16);
  for (int i = 0; i < 16; ++i) {
    if (i < 3) {
      qf_diag[i] = 1e7;
    } else if (i < 9) {
      qf_diag[i] = 1e6;
    } else if (i < 12) {
      qf_diag[i] = 1e5;
    } else {
      qf_diag[i] = 0.0;
    }
  }
  const Eigen::MatrixXd Qf = qf_diag.asDiagonal();
  Eigen::VectorXd target = Eigen::VectorXd::Zero(16);
  target[2] = 1.0;

  problem.running_cost = std::make_shared<QuadraticRunningCost>(
      params.ct, 0.01 * Qf, 1e-4 * Eigen::MatrixXd::Identity(4, 4), target);
  problem.terminal = std::make_shared<QuadrotorTerminal>(Qf, target);
  problem.x0 = Eigen::VectorXd::Zero(16);
  problem.nu_init = Eigen::VectorXd::Zero(6);
  problem.tf_init = 1.0;
  return problem;
}

const std::vector<ModelInfo>& registry() {
  static const std::vector<ModelInfo> entries = [] {
    std::vector<ModelInfo> v;
    v.push_back({"cart_pole", 4, 1, 2,
                 [](const ModelParams& p) { return cart_pole(p); }});
    v.push_back({"double_integrator", 2, 1, 1,
                 [](const ModelParams& p) { return double_integrator(p.R); }});
    v.push_back({"quadrotor", 16, 4, 6,
                 [](const ModelParams& p) { return quadrotor(p); }});
    std::sort(v.begin(), v.end(),
              [](const ModelInfo& a, const ModelInfo& b) { return a.name < b.name; });
    return v;
  }();
  return entries;
}

const ModelInfo& find_model(const std::string& name) {
  for (const auto& entry : registry()) {
    if (entry.name == name) return entry;
  }
  throw std::invalid_argument("unknown model: " + name);
}

}  // namespace ftddp::models
