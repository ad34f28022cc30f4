#include <doctest.h>

#include "ftddp/models.hpp"
#include "ftddp/oracle.hpp"
#include "ftddp/solver.hpp"

using namespace ftddp;

namespace {

ProblemDefinition zero_problem() {
  class Rest : public DynamicsModel {
   public:
    int state_dim() const override { return 2; }
    int control_dim() const override { return 1; }
    Eigen::VectorXd f(const Eigen::VectorXd&, const Eigen::VectorXd& u,
                      double) const override {
      Eigen::VectorXd out(2);
      out << 0.0, u[0];
      return out;
    }
  };
  ProblemDefinition problem;
  problem.dynamics = std::make_shared<Rest>();
  problem.running_cost = std::make_shared<QuadraticRunningCost>(
      0.0, Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Identity(1, 1),
      Eigen::VectorXd::Zero(2));
  problem.terminal = std::make_shared<FreeTerminalObjective>(2);
  problem.x0 = Eigen::VectorXd::Zero(2);
  problem.nu_init = Eigen::VectorXd::Zero(0);
  problem.tf_init = 1.0;
  return problem;
}

}  // namespace

TEST_CASE("zero problem converges immediately with zero control") {
  SolverOptions options;
  options.knot_count = 20;
  const Solution sol = solve(zero_problem(), options);
  CHECK(sol.status == SolveStatus::Converged);
  CHECK(sol.records.size() <= 2);
  CHECK(sol.cost == 0.0);
  for (const auto& u : sol.trajectory.u) CHECK(u.isZero(0));
}

TEST_CASE("options are validated") {
  SolverOptions options;
  options.gamma_max = 0.0;
  CHECK_THROWS_AS(solve(zero_problem(), options), std::invalid_argument);
  options = {};
  options.epsilon = 1.5;
  CHECK_THROWS_AS(solve(zero_problem(), options), std::invalid_argument);
  options = {};
  ProblemDefinition problem = zero_problem();
  problem.tf_init = 1000.0;
  CHECK_THROWS_AS(solve(problem, options), std::invalid_argument);
}

TEST_CASE("double integrator converges to the analytic horizon") {
  ProblemDefinition problem = models::double_integrator(1.0);
  SolverOptions options;
  options.knot_count = 100;
  const Solution sol = solve(problem, options);
  const AnalyticSolution exact = analytic_double_integrator(1.0);

  CHECK(sol.status == SolveStatus::Converged);
  CHECK(std::abs(sol.tf - exact.tf_star) <= 0.01);
  CHECK(std::abs(sol.nu[0] - exact.nu_star) <= 0.02);
  CHECK(sol.psi_norm <= 1e-3);
  CHECK(std::abs(sol.hamiltonian_residual) <= 1e-2);

  // Accepted merit never increases outside flagged stalls.
  for (std::size_t i = 1; i < sol.records.size(); ++i) {
    if (!sol.records[i].stalled) {
      CHECK(sol.records[i].merit <= sol.records[i - 1].merit + 1e-9);
    }
  }
}

TEST_CASE("solver runs are deterministic") {
  ProblemDefinition problem = models::double_integrator(1.0);
  SolverOptions options;
  options.knot_count = 60;
  options.max_iterations = 80;

  const Solution a = solve(problem, options);
  const Solution b = solve(problem, options);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].cost == b.records[i].cost);
    CHECK(a.records[i].tf == b.records[i].tf);
    CHECK(a.records[i].nu == b.records[i].nu);
    CHECK(a.records[i].psi_norm == b.records[i].psi_norm);
    CHECK(a.records[i].gamma_accepted == b.records[i].gamma_accepted);
  }
  for (int i = 0; i <= a.trajectory.knot_count(); ++i) {
    CHECK(a.trajectory.x[i] == b.trajectory.x[i]);
  }
}

TEST_CASE("record sink sees every accepted iteration") {
  ProblemDefinition problem = models::double_integrator(1.0);
  SolverOptions options;
  options.knot_count = 40;
  options.max_iterations = 25;
  int count = 0;
  const Solution sol = solve(problem, options,
                             [&](const IterationRecord&) { ++count; });
  CHECK(count == static_cast<int>(sol.records.size()));
  CHECK(count > 0);
}

TEST_CASE("hamiltonian residual of the zero nominal is the time cost") {
  ProblemDefinition problem = models::double_integrator(1.0);
  const int N = 30;
  const TrajectoryGrid traj = integrate_controls(
      problem, std::vector<Eigen::VectorXd>(N, Eigen::VectorXd::Zero(1)), 1.0);
  const BackwardPassResult bp =
      backward_pass(problem, traj, Eigen::VectorXd::Zero(1), 1e-9);
  // L = 1, Vx' f = 0 along the resting nominal.
  CHECK(hamiltonian_residual(problem, traj, bp.value) == doctest::Approx(1.0));
}

TEST_CASE("hamiltonian residual vanishes for a zero problem") {
  ProblemDefinition problem = zero_problem();
  const int N = 10;
  const TrajectoryGrid traj = integrate_controls(
      problem, std::vector<Eigen::VectorXd>(N, Eigen::VectorXd::Zero(1)), 1.0);
  const BackwardPassResult bp =
      backward_pass(problem, traj, Eigen::VectorXd::Zero(0), 1e-9);
  CHECK(hamiltonian_residual(problem, traj, bp.value) == 0.0);
}
