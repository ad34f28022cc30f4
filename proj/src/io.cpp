#include "ftddp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ftddp {

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string iterations_csv(const std::vector<IterationRecord>& records, int k) {
  std::ostringstream out;
  out << "iter,cost,tf";
  for (int j = 0; j < k; ++j) out << ",nu_" << j;
  out << ",psi_norm,gamma,zeta,ham_residual\n";
  for (const IterationRecord& rec : records) {
    out << rec.iteration << ',' << format_double(rec.cost) << ','
        << format_double(rec.tf);
    for (int j = 0; j < k; ++j) out << ',' << format_double(rec.nu[j]);
    out << ',' << format_double(rec.psi_norm) << ','
        << format_double(rec.gamma_accepted) << ','
        << format_double(rec.zeta_accepted) << ','
        << format_double(rec.hamiltonian_residual) << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const TrajectoryGrid& traj) {
  const int N = traj.knot_count();
  const int n = static_cast<int>(traj.x[0].size());
  const int m = static_cast<int>(traj.u[0].size());
  std::ostringstream out;
  out << 't';
  for (int j = 0; j < n; ++j) out << ",x_" << j;
  for (int j = 0; j < m; ++j) out << ",u_" << j;
  out << '\n';
  for (int i = 0; i <= N; ++i) {
    out << format_double(traj.time(i));
    for (int j = 0; j < n; ++j) out << ',' << format_double(traj.x[i][j]);
    const Eigen::VectorXd& u = traj.u[std::min(i, N - 1)];
    for (int j = 0; j < m; ++j) out << ',' << format_double(u[j]);
    out << '\n';
  }
  return out.str();
}

std::string solution_json(const Solution& solution) {
  nlohmann::json j;
  j["status"] = to_string(solution.status);
  j["tf"] = solution.tf;
  j["cost"] = solution.cost;
  j["nu"] = std::vector<double>(solution.nu.data(),
                                solution.nu.data() + solution.nu.size());
  j["psi_norm"] = solution.psi_norm;
  j["hamiltonian_residual"] = solution.hamiltonian_residual;
  j["iterations"] = solution.records.size();
  return j.dump(2) + "\n";
}

TrajectoryGrid parse_trajectory_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) {
    throw std::runtime_error("trajectory csv: empty input");
  }
  int n = 0, m = 0;
  {
    std::stringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) {
      if (col.rfind("x_", 0) == 0) ++n;
      if (col.rfind("u_", 0) == 0) ++m;
    }
  }
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> controls;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) {
      values.push_back(std::stod(cell));
    }
    if (static_cast<int>(values.size()) != 1 + n + m) {
      throw std::runtime_error("trajectory csv: malformed row");
    }
    times.push_back(values[0]);
    states.push_back(Eigen::Map<Eigen::VectorXd>(values.data() + 1, n));
    controls.push_back(Eigen::Map<Eigen::VectorXd>(values.data() + 1 + n, m));
  }
  if (times.size() < 2) {
    throw std::runtime_error("trajectory csv: need at least two rows");
  }
  TrajectoryGrid traj;
  traj.tf = times.back();
  traj.x = states;
  controls.pop_back();  // final row repeats the last control
  traj.u = controls;
  return traj;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << contents;
}

}  // namespace ftddp
