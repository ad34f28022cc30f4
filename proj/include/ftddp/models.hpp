#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ftddp/core.hpp"

namespace ftddp::models {

/// Tunable model parameters. Fields are ignored by models that do not use
/// them.
struct ModelParams {
  double R = 1.0;           // double integrator control weight
  double ct = 1.0;          // time cost for cart pole / quadrotor
  double cart_mass = 10.0;  // cart pole M
  double pole_mass = 1.0;   // cart pole m
  double pole_length = 0.5; // cart pole l
  double gravity = 9.8;
};

/// Planar double integrator with cost integrand 1 + R u^2 / 2 and terminal
/// constraint x1 - 1 = 0. n = 2, m = 1, k = 1.
ProblemDefinition double_integrator(double R = 1.0);

/// Pendulum on a force-actuated cart, state [x, xdot, theta, thetadot] with
/// theta = 0 upright. Swing-up from [0, 0, pi, 0] with terminal constraint
/// on [theta, thetadot]. n = 4, m = 1, k = 2.
ProblemDefinition cart_pole(const ModelParams& params = {});

/// 16-state quadrotor take-off: position, Euler angles, velocity, body rates
/// and four first-order motor states; control is commanded thrust and three
/// moments. Terminal constraint on the first six states. n = 16, m = 4,
/// k = 6.
ProblemDefinition quadrotor(const ModelParams& params = {});

struct ModelInfo {
  std::string name;
  int n = 0;
  int m = 0;
  int k = 0;
  std::function<ProblemDefinition(const ModelParams&)> make;
};

/// Built-in models sorted by name.
const std::vector<ModelInfo>& registry();

/// Looks up a registry entry; throws std::invalid_argument for unknown names.
const ModelInfo& find_model(const std::string& name);

}  // namespace ftddp::models
