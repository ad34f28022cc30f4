#pragma once

#include <string>
#include <vector>

#include "ftddp/solver.hpp"

namespace ftddp {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Header: iter,cost,tf,nu_0..nu_{k-1},psi_norm,gamma,zeta,ham_residual.
std::string iterations_csv(const std::vector<IterationRecord>& records, int k);

/// Header: t,x_0..x_{n-1},u_0..u_{m-1}; one row per state knot, the final
/// row repeating the last control.
std::string trajectory_csv(const TrajectoryGrid& traj);

/// Structured summary: status, final tf, nu, cost and residuals.
std::string solution_json(const Solution& solution);

/// Parses trajectory_csv output back into a grid (the final row's control is
/// the repeated last interval).
TrajectoryGrid parse_trajectory_csv(const std::string& text);

void write_file(const std::string& path, const std::string& contents);

}  // namespace ftddp
