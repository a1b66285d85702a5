#pragma once

#include <Eigen/Core>
#include <vector>

#include "tgpo/util/rng.hpp"

namespace tgpo::env {

enum class DynamicsId { Linear, Unicycle, Quadrotor };

// Deterministic discrete-time plant description. Control bounds are applied
// by clamping, never by rejection, because policy outputs are unbounded.
struct EnvSpec {
  DynamicsId dynamics = DynamicsId::Linear;
  double dt = 0.2;
  int state_dim = 2;
  int control_dim = 2;
  Eigen::VectorXd control_lower;
  Eigen::VectorXd control_upper;
  int horizon = 100;
  Eigen::VectorXd init_lower;
  Eigen::VectorXd init_upper;
  std::vector<int> position;  // indices of the position block inside the state
  Eigen::VectorXd workspace_lower;  // extent of the position block, for normalization
  Eigen::VectorXd workspace_upper;

  // quadrotor mixer geometry (plus configuration)
  double quad_arm = 0.1;
  double quad_yaw_coef = 0.01;

  static EnvSpec linear();
  static EnvSpec unicycle();
  static EnvSpec quadrotor();
  void validate() const;
};

// Single Euler steps of the three plants. dt is passed explicitly so tests
// can probe them without an EnvSpec.
Eigen::VectorXd step_linear(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt);
Eigen::VectorXd step_unicycle(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt);
Eigen::VectorXd step_quadrotor(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt,
                               double arm, double yaw_coef);

// Clamps u to the spec bounds and advances one step.
Eigen::VectorXd step(const EnvSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& u);

// Uniform draw from the initial axis-box; degenerate dimensions stay fixed.
Eigen::VectorXd sample_initial(const EnvSpec& spec, Rng& rng);

}  // namespace tgpo::env
