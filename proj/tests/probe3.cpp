// Replicates the solve loop with full visibility into the (nu, tf) update.
#include <cstdio>
#include <cstdlib>

#include <Eigen/Eigenvalues>

#include "ftddp/backward.hpp"
#include "ftddp/forward.hpp"
#include "ftddp/models.hpp"

using namespace ftddp;

int main(int argc, char** argv) {
  const char* name = argc > 1 ? argv[1] : "cart_pole";
  int N = argc > 2 ? std::atoi(argv[2]) : 100;
  int iters = argc > 3 ? std::atoi(argv[3]) : 12;

  ProblemDefinition problem = models::find_model(name).make({});
  TrajectoryGrid traj = integrate_controls(
      problem,
      std::vector<Eigen::VectorXd>(N, Eigen::VectorXd::Zero(problem.control_dim())),
      problem.tf_init);
  Eigen::VectorXd nu = problem.nu_init;

  LineSearchOptions ls;
  for (int it = 1; it <= iters; ++it) {
    const BackwardPassResult bp = backward_pass(problem, traj, nu, 1e-9);
    const ValueExpansion& ve0 = bp.value.front();
    const ValueExpansion& veT = bp.value.back();
    const int k = problem.constraint_dim();

    Eigen::MatrixXd M(k + 1, k + 1);
    M.topLeftCorner(k, k) = ve0.Vnunu;
    M.topRightCorner(k, 1) = ve0.Vnutf;
    M.bottomLeftCorner(1, k) = ve0.Vnutf.transpose();
    M(k, k) = ve0.Vtftf;
    Eigen::VectorXd r(k + 1);
    r.head(k) = veT.Vnu;
    r[k] = veT.Vtf;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);

    std::printf("== it %d tf=%.4f |nu|=%.4f\n", it, traj.tf, nu.norm());
    std::printf("   eig(M):");
    for (int i = 0; i <= k; ++i) std::printf(" %10.3e", eig.eigenvalues()[i]);
    std::printf("\n   r:     ");
    for (int i = 0; i <= k; ++i) std::printf(" %10.3e", r[i]);
    const MultiplierTimeUpdate up =
        update_multiplier_time(ve0, veT, ls.epsilon, traj.tf, nu, ls.update);
    std::printf("\n   dnu:   ");
    for (int i = 0; i < k; ++i) std::printf(" %10.3e", up.delta_nu[i]);
    std::printf("  dtf: %10.3e trunc=%d scale=%.3g\n", up.delta_tf,
                up.truncated, up.step_scale);

    const LineSearchResult step =
        line_search(problem, traj, bp.gains, ve0, veT, nu, ls);
    std::printf("   accept: gamma=%.4g tf=%.4f |nu'|=%.4f merit=%.5f%s\n",
                step.gamma, step.tf, step.nu.norm(), step.merit,
                step.stalled ? " STALL" : "");
    traj = step.traj;
    nu = step.nu;
  }
  return 0;
}
