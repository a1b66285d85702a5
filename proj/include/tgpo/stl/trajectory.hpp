#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

namespace tgpo::stl {

// Discrete-time state trajectory sampled at a fixed step duration. Index i is
// time step i; the CSV form has header "t,x0,x1,..." and one row per step.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<Eigen::VectorXd> states, double dt = 1.0);

  int length() const { return static_cast<int>(states_.size()); }
  int state_dim() const { return states_.empty() ? 0 : static_cast<int>(states_[0].size()); }
  double dt() const { return dt_; }

  const Eigen::VectorXd& at(int t) const;
  const std::vector<Eigen::VectorXd>& states() const { return states_; }
  void append(const Eigen::VectorXd& x);

  void write_csv(std::ostream& out) const;
  void save_csv(const std::string& path) const;
  static Trajectory read_csv(std::istream& in, double dt = 1.0);
  static Trajectory load_csv(const std::string& path, double dt = 1.0);

 private:
  std::vector<Eigen::VectorXd> states_;
  double dt_ = 1.0;
};

}  // namespace tgpo::stl
