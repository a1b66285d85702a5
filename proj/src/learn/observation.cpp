#include "tgpo/learn/observation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tgpo::learn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kVelocityScale = 5.0;
constexpr double kAngularRateScale = 10.0;

}  // namespace

ObservationEncoder::ObservationEncoder(const mdp::Task& task, StateFields fields)
    : fields_(fields),
      state_dim_(task.env.state_dim),
      n_goals_(task.taskset.n_subgoals()),
      n_constraints_(task.taskset.n_constraints()),
      horizon_(task.env.horizon),
      variables_(task.taskset.variables) {
  center_ = Eigen::VectorXd::Zero(state_dim_);
  halfspan_ = Eigen::VectorXd::Ones(state_dim_);
  const auto& env = task.env;
  for (std::size_t i = 0; i < env.position.size(); ++i) {
    const int d = env.position[i];
    const double lo = env.workspace_lower[static_cast<int>(i)];
    const double hi = env.workspace_upper[static_cast<int>(i)];
    center_[d] = 0.5 * (lo + hi);
    halfspan_[d] = std::max(0.5 * (hi - lo), 1e-9);
  }
  switch (env.dynamics) {
    case env::DynamicsId::Linear:
      break;
    case env::DynamicsId::Unicycle:
      halfspan_[2] = kPi;             // heading
      halfspan_[3] = kVelocityScale;  // speed
      break;
    case env::DynamicsId::Quadrotor:
      for (int d = 3; d < 6; ++d) halfspan_[d] = kVelocityScale;
      for (int d = 6; d < 9; ++d) halfspan_[d] = kPi;
      for (int d = 9; d < 12; ++d) halfspan_[d] = kAngularRateScale;
      break;
  }
  dim_ = state_dim_;
  if (fields_.time) dim_ += 1;
  if (fields_.flags) dim_ += 2 + n_constraints_;
  if (fields_.time) dim_ += static_cast<int>(variables_.size());
}

Eigen::VectorXd ObservationEncoder::encode(const mdp::AugmentedState& s,
                                           const decomp::TimeAssignment& assignment) const {
  Eigen::RowVectorXd row(dim_);
  encode_into(s, assignment, row);
  return row.transpose();
}

void ObservationEncoder::encode_into(const mdp::AugmentedState& s,
                                     const decomp::TimeAssignment& assignment,
                                     Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> out)
    const {
  if (s.x.size() != state_dim_) throw std::invalid_argument("encode: wrong state dim");
  if (assignment.size() != variables_.size())
    throw std::invalid_argument("encode: wrong assignment size");
  if (out.size() != dim_) throw std::invalid_argument("encode: wrong output size");
  int at = 0;
  for (int d = 0; d < state_dim_; ++d) {
    const double v = (s.x[d] - center_[d]) / halfspan_[d];
    out[at++] = std::clamp(v, -1.0, 1.0);
  }
  if (fields_.time) out[at++] = static_cast<double>(s.tau) / std::max(horizon_, 1);
  if (fields_.flags) {
    out[at++] = static_cast<double>(s.p) / std::max(n_goals_, 1);
    out[at++] = static_cast<double>(s.r) / 2.0;
    for (int k = 0; k < n_constraints_; ++k)
      out[at++] = static_cast<double>(s.chi[static_cast<std::size_t>(k)]);
  }
  if (fields_.time) {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      const auto& var = variables_[i];
      const int width = var.hi - var.lo;
      out[at++] = width == 0 ? 0.5
                             : static_cast<double>(assignment[i] - var.lo) / width;
    }
  }
}

}  // namespace tgpo::learn
