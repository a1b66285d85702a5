#include "tgpo/stl/trajectory.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "tgpo/util/error.hpp"

namespace tgpo::stl {

Trajectory::Trajectory(std::vector<Eigen::VectorXd> states, double dt)
    : states_(std::move(states)), dt_(dt) {
  for (const auto& x : states_)
    if (x.size() != states_[0].size())
      throw Error("trajectory states must share one dimension");
}

const Eigen::VectorXd& Trajectory::at(int t) const {
  if (t < 0 || t >= length()) throw Error("trajectory index out of range");
  return states_[t];
}

void Trajectory::append(const Eigen::VectorXd& x) {
  if (!states_.empty() && x.size() != states_[0].size())
    throw Error("trajectory states must share one dimension");
  states_.push_back(x);
}

void Trajectory::write_csv(std::ostream& out) const {
  out << "t";
  for (int i = 0; i < state_dim(); ++i) out << ",x" << i;
  out << "\n";
  out << std::setprecision(17);
  for (int t = 0; t < length(); ++t) {
    out << t;
    for (int i = 0; i < state_dim(); ++i) out << "," << states_[t][i];
    out << "\n";
  }
}

void Trajectory::save_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  write_csv(f);
}

Trajectory Trajectory::read_csv(std::istream& in, double dt) {
  std::string line;
  if (!std::getline(in, line)) throw Error("trajectory CSV is empty");
  if (line.rfind("t,", 0) != 0) throw Error("trajectory CSV must start with header 't,x0,...'");
  int dim = 0;
  for (char c : line)
    if (c == ',') ++dim;

  std::vector<Eigen::VectorXd> states;
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ',')) throw Error("trajectory CSV: bad row");
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) {
      if (!std::getline(ss, cell, ','))
        throw Error("trajectory CSV: row " + std::to_string(row) + " has too few columns");
      try {
        x[i] = std::stod(cell);
      } catch (const std::exception&) {
        throw Error("trajectory CSV: non-numeric cell '" + cell + "'");
      }
    }
    if (std::getline(ss, cell, ','))
      throw Error("trajectory CSV: row " + std::to_string(row) + " has too many columns");
    states.push_back(std::move(x));
    ++row;
  }
  if (states.empty()) throw Error("trajectory CSV has no data rows");
  return Trajectory(std::move(states), dt);
}

Trajectory Trajectory::load_csv(const std::string& path, double dt) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  return read_csv(f, dt);
}

}  // namespace tgpo::stl
