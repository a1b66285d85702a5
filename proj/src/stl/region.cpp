#include "tgpo/stl/region.hpp"

#include <algorithm>
#include <limits>

#include "tgpo/util/error.hpp"

namespace tgpo::stl {

Region Region::circle(std::string label, Eigen::VectorXd center, double radius,
                      std::vector<int> projection) {
  if (radius <= 0.0) throw Error("region '" + label + "': radius must be positive");
  if (static_cast<int>(projection.size()) != center.size())
    throw Error("region '" + label + "': projection size does not match center dimension");
  Region r;
  r.label_ = std::move(label);
  r.is_circle_ = true;
  r.center_ = std::move(center);
  r.radius_ = radius;
  r.projection_ = std::move(projection);
  return r;
}

Region Region::box(std::string label, Eigen::VectorXd lower, Eigen::VectorXd upper,
                   std::vector<int> projection) {
  if (lower.size() != upper.size())
    throw Error("region '" + label + "': box corners must have equal dimension");
  for (int i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i])
      throw Error("region '" + label + "': box corners must be ordered componentwise");
  if (static_cast<int>(projection.size()) != lower.size())
    throw Error("region '" + label + "': projection size does not match corner dimension");
  Region r;
  r.label_ = std::move(label);
  r.is_circle_ = false;
  r.lower_ = std::move(lower);
  r.upper_ = std::move(upper);
  r.projection_ = std::move(projection);
  return r;
}

double Region::value(const Eigen::VectorXd& x) const {
  const int d = static_cast<int>(projection_.size());
  Eigen::VectorXd p(d);
  for (int i = 0; i < d; ++i) {
    if (projection_[i] < 0 || projection_[i] >= x.size())
      throw Error("region '" + label_ + "': projection index out of range for state");
    p[i] = x[projection_[i]];
  }
  if (is_circle_) return radius_ - (p - center_).norm();
  double v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) v = std::min(v, std::min(p[i] - lower_[i], upper_[i] - p[i]));
  return v;
}

}  // namespace tgpo::stl
