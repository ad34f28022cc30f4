#include "ftddp/oracle.hpp"

#include <cmath>

namespace ftddp {

AnalyticSolution analytic_double_integrator(double R) {
  if (!(R > 0.0)) {
    throw std::invalid_argument("analytic_double_integrator: R must be positive");
  }
  AnalyticSolution sol;
  sol.R = R;
  sol.tf_star = std::pow(4.5 * R, 0.25);
  sol.nu_star = -2.0 / 3.0 * sol.tf_star;
  return sol;
}

OracleReport verify_against_oracle(const Solution& solution, double R,
                                   const OracleTolerances& tol) {
  if (solution.nu.size() != 1 || solution.trajectory.x.empty() ||
      solution.trajectory.x[0].size() != 2 ||
      solution.trajectory.u[0].size() != 1) {
    throw std::invalid_argument(
        "verify_against_oracle: not a double-integrator solution");
  }
  const AnalyticSolution exact = analytic_double_integrator(R);
  const TrajectoryGrid& traj = solution.trajectory;
  const int N = traj.knot_count();

  OracleReport report;
  report.tf_error = std::abs(solution.tf - exact.tf_star);
  report.nu_error = std::abs(solution.nu[0] - exact.nu_star);

  // Control error on the solver's own grid, and the residual of the best
  // least-squares line through (t_i, u_i).
  double sum_t = 0.0, sum_tt = 0.0, sum_u = 0.0, sum_tu = 0.0;
  for (int i = 0; i < N; ++i) {
    const double t = traj.time(i);
    const double u = traj.u[i][0];
    report.control_error =
        std::max(report.control_error, std::abs(u - exact.u_star(t)));
    report.max_abs_u = std::max(report.max_abs_u, std::abs(u));
    sum_t += t;
    sum_tt += t * t;
    sum_u += u;
    sum_tu += t * u;
  }
  const double det = N * sum_tt - sum_t * sum_t;
  const double slope = (N * sum_tu - sum_t * sum_u) / det;
  const double intercept = (sum_u - slope * sum_t) / N;
  for (int i = 0; i < N; ++i) {
    const double fit = intercept + slope * traj.time(i);
    report.linearity_defect =
        std::max(report.linearity_defect, std::abs(traj.u[i][0] - fit));
  }

  report.tf_ok = report.tf_error <= tol.tf;
  report.nu_ok = report.nu_error <= tol.nu;
  report.control_ok = report.control_error <= tol.control;
  report.linear_ok =
      report.linearity_defect <= tol.linearity_frac * std::max(report.max_abs_u, 1e-12);
  return report;
}

}  // namespace ftddp
