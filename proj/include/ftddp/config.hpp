#pragma once

#include <map>
#include <optional>
#include <string>

#include "ftddp/models.hpp"
#include "ftddp/solver.hpp"

namespace ftddp {

/// One solve run: model selection, problem overrides and solver options.
struct RunConfig {
  std::string model;
  models::ModelParams params;
  std::optional<Eigen::VectorXd> x0;
  std::optional<double> tf_init;
  std::optional<Eigen::VectorXd> nu_init;
  SolverOptions solver;
  std::string output_dir = ".";

  ProblemDefinition make_problem() const;
};

/// Flat key-value text: one `key = value` per line, dotted keys, `#` starts
/// a comment. Vector values are comma-separated.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Parses and validates a config file. Throws std::runtime_error naming the
/// offending key for missing or malformed fields.
RunConfig load_run_config(const std::string& path);

}  // namespace ftddp
