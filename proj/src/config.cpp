#include "ftddp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ftddp {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(out)) {
      throw std::invalid_argument(value);
    }
    return out;
  } catch (const std::exception&) {
    throw std::runtime_error("config: malformed numeric value for '" + key + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int out = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw std::runtime_error("config: malformed integer value for '" + key + "'");
  }
}

Eigen::VectorXd parse_vector(const std::string& key, const std::string& value) {
  std::vector<double> entries;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    entries.push_back(parse_double(key, trim(item)));
  }
  Eigen::VectorXd out(static_cast<int>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) out[i] = entries[i];
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: expected 'key = value' on line " +
                               std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("config: empty key on line " +
                               std::to_string(line_no));
    }
    out[key] = value;
  }
  return out;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("config: cannot read '" + path + "'");
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  auto kv = parse_key_values(buffer.str());

  RunConfig config;
  const auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string value = it->second;
    kv.erase(it);
    return value;
  };

  const auto model = take("model");
  if (!model) throw std::runtime_error("config: missing required key 'model'");
  config.model = *model;
  models::find_model(config.model);  // validates the name

  if (const auto v = take("model.R")) config.params.R = parse_double("model.R", *v);
  if (const auto v = take("model.ct")) config.params.ct = parse_double("model.ct", *v);
  if (const auto v = take("model.cart_mass"))
    config.params.cart_mass = parse_double("model.cart_mass", *v);
  if (const auto v = take("model.pole_mass"))
    config.params.pole_mass = parse_double("model.pole_mass", *v);
  if (const auto v = take("model.pole_length"))
    config.params.pole_length = parse_double("model.pole_length", *v);
  if (const auto v = take("model.gravity"))
    config.params.gravity = parse_double("model.gravity", *v);

  if (const auto v = take("problem.x0")) config.x0 = parse_vector("problem.x0", *v);
  if (const auto v = take("problem.tf_init")) {
    config.tf_init = parse_double("problem.tf_init", *v);
    if (!(*config.tf_init > 0.0)) {
      throw std::runtime_error("config: 'problem.tf_init' must be positive");
    }
  }
  if (const auto v = take("problem.nu_init"))
    config.nu_init = parse_vector("problem.nu_init", *v);

  SolverOptions& s = config.solver;
  if (const auto v = take("solver.max_iterations"))
    s.max_iterations = parse_int("solver.max_iterations", *v);
  if (const auto v = take("solver.knot_count"))
    s.knot_count = parse_int("solver.knot_count", *v);
  if (const auto v = take("solver.gamma_max"))
    s.gamma_max = parse_double("solver.gamma_max", *v);
  if (const auto v = take("solver.epsilon"))
    s.epsilon = parse_double("solver.epsilon", *v);
  if (const auto v = take("solver.tol_cost_change"))
    s.tol_cost_change = parse_double("solver.tol_cost_change", *v);
  if (const auto v = take("solver.tol_constraint"))
    s.tol_constraint = parse_double("solver.tol_constraint", *v);
  if (const auto v = take("solver.tol_tf_change"))
    s.tol_tf_change = parse_double("solver.tol_tf_change", *v);
  if (const auto v = take("solver.t_min")) s.t_min = parse_double("solver.t_min", *v);
  if (const auto v = take("solver.t_max")) s.t_max = parse_double("solver.t_max", *v);
  if (const auto v = take("solver.mu")) s.mu = parse_double("solver.mu", *v);
  if (const auto v = take("solver.mu_m")) s.mu_m = parse_double("solver.mu_m", *v);

  if (const auto v = take("output.dir")) config.output_dir = *v;

  if (!kv.empty()) {
    throw std::runtime_error("config: unknown key '" + kv.begin()->first + "'");
  }
  s.validate();
  return config;
}

ProblemDefinition RunConfig::make_problem() const {
  const models::ModelInfo& info = models::find_model(model);
  ProblemDefinition problem = info.make(params);
  if (x0) {
    if (x0->size() != problem.state_dim()) {
      throw std::runtime_error("config: 'problem.x0' has wrong dimension");
    }
    problem.x0 = *x0;
  }
  if (nu_init) {
    if (nu_init->size() != problem.constraint_dim()) {
      throw std::runtime_error("config: 'problem.nu_init' has wrong dimension");
    }
    problem.nu_init = *nu_init;
  }
  if (tf_init) problem.tf_init = *tf_init;
  return problem;
}

}  // namespace ftddp
