#pragma once

#include "ftddp/solver.hpp"

namespace ftddp {

/// Closed-form solution of the double-integrator free-time problem:
///   tf* = (4.5 R)^(1/4),  nu* = -(2/3) tf*,  u*(t) = (nu*/R)(t - tf*),
/// with co-states lambda1 = nu* and lambda2(t) = nu* (tf* - t).
struct AnalyticSolution {
  double R = 1.0;
  double tf_star = 0.0;
  double nu_star = 0.0;

  double u_star(double t) const { return nu_star / R * (t - tf_star); }
  double lambda1(double) const { return nu_star; }
  double lambda2(double t) const { return nu_star * (tf_star - t); }
};

AnalyticSolution analytic_double_integrator(double R);

struct OracleTolerances {
  double tf = 0.01;
  double nu = 0.02;
  double control = 0.05;        // max |u - u*| over the solution grid
  double linearity_frac = 0.01; // best-fit line residual / max |u|
};

struct OracleReport {
  double tf_error = 0.0;
  double nu_error = 0.0;
  double control_error = 0.0;    // max norm against u* on the solution grid
  double linearity_defect = 0.0; // max residual of the best-fit line in t
  double max_abs_u = 0.0;
  bool tf_ok = false;
  bool nu_ok = false;
  bool control_ok = false;
  bool linear_ok = false;

  bool pass() const { return tf_ok && nu_ok && control_ok && linear_ok; }
};

/// Compares a solver result for the double integrator against the closed
/// form. Throws std::invalid_argument when the solution does not look like a
/// double-integrator run.
OracleReport verify_against_oracle(const Solution& solution, double R,
                                   const OracleTolerances& tol = {});

}  // namespace ftddp
