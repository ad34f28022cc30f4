#include "ftddp/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "ftddp/config.hpp"
#include "ftddp/io.hpp"
#include "ftddp/models.hpp"
#include "ftddp/oracle.hpp"

namespace ftddp {

namespace {

int cmd_solve(const std::string& config_path, const std::string& out_override,
              std::ostream& out, std::ostream& err) {
  RunConfig config;
  ProblemDefinition problem;
  try {
    config = load_run_config(config_path);
    problem = config.make_problem();
  } catch (const std::exception& ex) {
    err << ex.what() << "\n";
    return 1;
  }
  const std::string out_dir =
      out_override.empty() ? config.output_dir : out_override;
  std::filesystem::create_directories(out_dir);

  const Solution solution = solve(problem, config.solver);

  write_file(out_dir + "/iterations.csv",
             iterations_csv(solution.records, problem.constraint_dim()));
  write_file(out_dir + "/trajectory.csv", trajectory_csv(solution.trajectory));
  write_file(out_dir + "/solution.json", solution_json(solution));

  out << "status: " << to_string(solution.status)
      << "  iterations: " << solution.records.size()
      << "  cost: " << format_double(solution.cost)
      << "  tf: " << format_double(solution.tf)
      << "  |psi|: " << format_double(solution.psi_norm) << "\n";

  switch (solution.status) {
    case SolveStatus::Converged: return 0;
    case SolveStatus::MaxIterations:
    case SolveStatus::Stalled: return 2;
    case SolveStatus::Failed: return 3;
  }
  return 3;
}

int cmd_oracle_check(const std::vector<double>& r_values, int max_iterations,
                     int knots, std::ostream& out) {
  out << std::left << std::setw(8) << "R" << std::setw(12) << "tf"
      << std::setw(12) << "tf*" << std::setw(12) << "nu" << std::setw(12)
      << "nu*" << std::setw(14) << "max|u-u*|" << "result\n";
  bool all_pass = true;
  for (double R : r_values) {
    ProblemDefinition problem = models::double_integrator(R);
    SolverOptions options;
    options.max_iterations = max_iterations;
    options.knot_count = knots;
    const Solution solution = solve(problem, options);
    const AnalyticSolution exact = analytic_double_integrator(R);
    const OracleReport report = verify_against_oracle(solution, R);
    const bool pass = report.pass() && solution.status == SolveStatus::Converged;
    all_pass = all_pass && pass;
    out << std::left << std::setw(8) << format_double(R) << std::setw(12)
        << format_double(solution.tf) << std::setw(12)
        << format_double(exact.tf_star) << std::setw(12)
        << format_double(solution.nu[0]) << std::setw(12)
        << format_double(exact.nu_star) << std::setw(14)
        << format_double(report.control_error) << (pass ? "pass" : "FAIL")
        << "\n";
  }
  return all_pass ? 0 : 2;
}

int cmd_models(std::ostream& out) {
  for (const auto& info : models::registry()) {
    out << info.name << " n=" << info.n << " m=" << info.m << " k=" << info.k
        << "\n";
  }
  return 0;
}

std::vector<double> parse_r_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"free-final-time differential dynamic programming"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* solve_cmd = app.add_subcommand("solve", "run a solve from a config file");
  solve_cmd->add_option("--config", config_path, "path to a key=value config")
      ->required();
  solve_cmd->add_option("--out", out_dir, "output directory override");

  std::string r_csv = "0.1,1,10";
  int max_iterations = 300;
  int knots = 200;
  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "double-integrator solves against the closed form");
  oracle_cmd->add_option("--R", r_csv, "comma-separated control weights");
  oracle_cmd->add_option("--max-iterations", max_iterations, "iteration budget");
  oracle_cmd->add_option("--knots", knots, "trajectory knot count");

  auto* models_cmd = app.add_subcommand("models", "list built-in models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << ex.what() << "\n";
    return 1;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(config_path, out_dir, out, err);
    if (oracle_cmd->parsed()) {
      return cmd_oracle_check(parse_r_list(r_csv), max_iterations, knots, out);
    }
    if (models_cmd->parsed()) return cmd_models(out);
  } catch (const std::exception& ex) {
    err << ex.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace ftddp
