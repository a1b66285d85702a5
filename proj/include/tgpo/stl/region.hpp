#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

namespace tgpo::stl {

// Labeled spatial region with a signed membership function: positive inside,
// negative outside, zero on the boundary. The projection indices select which
// raw-state components are interpreted as position.
class Region {
 public:
  static Region circle(std::string label, Eigen::VectorXd center, double radius,
                       std::vector<int> projection);
  static Region box(std::string label, Eigen::VectorXd lower, Eigen::VectorXd upper,
                    std::vector<int> projection);

  // Signed distance-style value of the raw state x.
  // Circle: radius - |proj(x) - center|. Box: min_i min(p_i - lo_i, hi_i - p_i).
  double value(const Eigen::VectorXd& x) const;

  const std::string& label() const { return label_; }
  bool is_circle() const { return is_circle_; }
  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return radius_; }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  const std::vector<int>& projection() const { return projection_; }

 private:
  Region() = default;

  std::string label_;
  bool is_circle_ = true;
  Eigen::VectorXd center_;
  double radius_ = 0.0;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  std::vector<int> projection_;
};

// Region lookup by label; std::map keeps iteration order deterministic.
using RegionMap = std::map<std::string, Region>;

}  // namespace tgpo::stl
