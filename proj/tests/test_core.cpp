#include <doctest.h>

#include "ftddp/core.hpp"
#include "ftddp/models.hpp"

using namespace ftddp;

namespace {

TrajectoryGrid constant_grid(int N, double tf, const Eigen::VectorXd& u0,
                             int n) {
  TrajectoryGrid traj;
  traj.tf = tf;
  traj.u.assign(N, u0);
  traj.x.assign(N + 1, Eigen::VectorXd::Zero(n));
  return traj;
}

}  // namespace

TEST_CASE("regrid keeps controls index-aligned") {
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(1, 3.5);
  TrajectoryGrid traj = constant_grid(10, 1.0, c, 2);

  const TrajectoryGrid stretched = regrid(traj, 2.0);
  CHECK(stretched.knot_count() == 10);
  CHECK(stretched.dt() == 0.2);
  for (int i = 0; i < 10; ++i) CHECK(stretched.u[i][0] == 3.5);

  const TrajectoryGrid same = regrid(traj, traj.tf);
  CHECK(same.tf == traj.tf);
  CHECK(same.dt() == traj.dt());
  for (int i = 0; i < 10; ++i) CHECK(same.u[i] == traj.u[i]);
}

TEST_CASE("regrid carries a varying schedule by index") {
  TrajectoryGrid traj = constant_grid(4, 1.0, Eigen::VectorXd::Zero(1), 2);
  for (int i = 0; i < 4; ++i) traj.u[i][0] = i;
  const TrajectoryGrid shrunk = regrid(traj, 0.5);
  CHECK(shrunk.dt() == 0.125);
  for (int i = 0; i < 4; ++i) CHECK(shrunk.u[i][0] == i);
}

TEST_CASE("regrid rejects non-positive horizons and round-trips dt") {
  TrajectoryGrid traj = constant_grid(8, 2.0, Eigen::VectorXd::Zero(1), 2);
  CHECK_THROWS_AS(regrid(traj, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(regrid(traj, -1.0), std::invalid_argument);

  const TrajectoryGrid back = regrid(regrid(traj, 0.7), traj.tf);
  CHECK(back.dt() == traj.dt());
  CHECK(back.tf == traj.tf);
}

TEST_CASE("total cost of the zero-control double integrator") {
  ProblemDefinition problem = models::double_integrator(1.0);
  TrajectoryGrid traj =
      constant_grid(50, 1.0, Eigen::VectorXd::Zero(1), 2);

  // u = 0 from rest: L = 1 everywhere, psi = -1.
  CHECK(total_cost(problem, traj, Eigen::VectorXd::Zero(1)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(total_cost(problem, traj, Eigen::VectorXd::Constant(1, 2.0)) ==
        doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("total cost is zero for a zero problem") {
  ProblemDefinition problem;
  problem.dynamics = models::double_integrator(1.0).dynamics;
  problem.running_cost = std::make_shared<QuadraticRunningCost>(
      0.0, Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Identity(1, 1),
      Eigen::VectorXd::Zero(2));
  problem.terminal = std::make_shared<FreeTerminalObjective>(2);
  problem.x0 = Eigen::VectorXd::Zero(2);
  problem.nu_init = Eigen::VectorXd::Zero(0);

  TrajectoryGrid traj = constant_grid(10, 1.0, Eigen::VectorXd::Zero(1), 2);
  CHECK(total_cost(problem, traj, Eigen::VectorXd::Zero(0)) == 0.0);
}

TEST_CASE("total cost is affine in nu for a fixed trajectory") {
  ProblemDefinition problem = models::double_integrator(1.0);
  TrajectoryGrid traj = constant_grid(7, 1.3, Eigen::VectorXd::Constant(1, 0.4), 2);
  for (int i = 0; i <= 7; ++i) {
    traj.x[i] = Eigen::VectorXd::Constant(2, 0.1 * i);
  }
  const auto J = [&](double nu) {
    return total_cost(problem, traj, Eigen::VectorXd::Constant(1, nu));
  };
  const double j0 = J(0.0);
  for (double a : {-2.0, 0.3, 5.0}) {
    for (double b : {-1.0, 0.7}) {
      CHECK(J(a + b) == doctest::Approx(J(a) + J(b) - j0).epsilon(1e-12));
    }
  }
}

namespace {

// L = a + b t, independent of state and control.
class AffineTimeCost : public RunningCost {
 public:
  AffineTimeCost(double a, double b) : a_(a), b_(b) {}
  double L(const Eigen::VectorXd&, const Eigen::VectorXd&, double t) const override {
    return a_ + b_ * t;
  }
  Eigen::VectorXd Lx(const Eigen::VectorXd& x, const Eigen::VectorXd&,
                     double) const override {
    return Eigen::VectorXd::Zero(x.size());
  }
  Eigen::VectorXd Lu(const Eigen::VectorXd&, const Eigen::VectorXd& u,
                     double) const override {
    return Eigen::VectorXd::Zero(u.size());
  }
  Eigen::MatrixXd Lxx(const Eigen::VectorXd& x, const Eigen::VectorXd&,
                      double) const override {
    return Eigen::MatrixXd::Zero(x.size(), x.size());
  }
  Eigen::MatrixXd Luu(const Eigen::VectorXd&, const Eigen::VectorXd& u,
                      double) const override {
    return Eigen::MatrixXd::Identity(u.size(), u.size());
  }
  Eigen::MatrixXd Lxu(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                      double) const override {
    return Eigen::MatrixXd::Zero(x.size(), u.size());
  }

 private:
  double a_, b_;
};

}  // namespace

TEST_CASE("trapezoid quadrature is exact on affine integrands") {
  ProblemDefinition problem = models::double_integrator(1.0);
  problem.running_cost = std::make_shared<AffineTimeCost>(0.7, -0.3);
  TrajectoryGrid traj = constant_grid(9, 1.7, Eigen::VectorXd::Zero(1), 2);
  const double exact = 0.7 * 1.7 - 0.3 * 1.7 * 1.7 / 2.0;
  const double J =
      total_cost(problem, traj, Eigen::VectorXd::Zero(1)) -
      problem.terminal->psi(traj.x.back(), traj.tf)[0] * 0.0 + 1.0 * 0.0;
  // nu = 0 removes the constraint term; phi = 0.
  CHECK(J == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("value expansion symmetrization") {
  ValueExpansion ve = ValueExpansion::zero(3, 2);
  ve.Vxx << 1, 2, 0, 0, 1, 0, 0, 0, 1;
  ve.Vnunu << 0, 1, 3, 0;
  ve.symmetrize();
  CHECK(ve.Vxx(0, 1) == 1.0);
  CHECK(ve.Vxx(1, 0) == 1.0);
  CHECK(ve.Vnunu(0, 1) == 2.0);
  CHECK(ve.Vnunu(1, 0) == 2.0);
  CHECK(ve.all_finite());
  ve.Vtf = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(ve.all_finite());
}
