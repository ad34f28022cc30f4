#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ftddp/models.hpp"
#include "ftddp/oracle.hpp"
#include "ftddp/solver.hpp"

using namespace ftddp;

int main(int argc, char** argv) {
  double R = argc > 1 ? std::atof(argv[1]) : 1.0;
  int N = argc > 2 ? std::atoi(argv[2]) : 100;
  int iters = argc > 3 ? std::atoi(argv[3]) : 300;
  int every = argc > 4 ? std::atoi(argv[4]) : 10;

  ProblemDefinition problem = models::double_integrator(R);
  SolverOptions options;
  options.knot_count = N;
  options.max_iterations = iters;
  if (argc > 5) options.update.cond_floor = std::atof(argv[5]);
  if (argc > 6) options.update.dtf_cap_frac = std::atof(argv[6]);
  if (argc > 7) options.update.dnu_cap = std::atof(argv[7]);

  const Solution sol = solve(problem, options, [&](const IterationRecord& r) {
    if (r.iteration % every == 0 || r.iteration <= 15) {
      std::printf(
          "it=%4d cost=%12.6f tf=%9.5f nu=%10.5f psi=%10.3e g=%7.4f z=%7.4f "
          "H=%10.3e merit=%12.6f %s\n",
          r.iteration, r.cost, r.tf, r.nu[0], r.psi_norm, r.gamma_accepted,
          r.zeta_accepted, r.hamiltonian_residual, r.merit,
          r.stalled ? "STALL" : "");
    }
  });
  const AnalyticSolution exact = analytic_double_integrator(R);
  std::printf("status=%s iters=%zu tf=%.5f (tf*=%.5f) nu=%.5f (nu*=%.5f) "
              "|psi|=%.3e H=%.3e\n",
              to_string(sol.status), sol.records.size(), sol.tf, exact.tf_star,
              sol.nu[0], exact.nu_star, sol.psi_norm, sol.hamiltonian_residual);
  return 0;
}
