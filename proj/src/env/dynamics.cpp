#include "tgpo/env/dynamics.hpp"

#include <Eigen/Geometry>

#include <cmath>

#include "tgpo/util/error.hpp"

namespace tgpo::env {

namespace {
constexpr double kGravity = 9.81;
constexpr double kQuadMass = 0.2;
const Eigen::Vector3d kInertia(0.01, 0.01, 0.02);
}  // namespace

EnvSpec EnvSpec::linear() {
  EnvSpec s;
  s.dynamics = DynamicsId::Linear;
  s.dt = 0.2;
  s.state_dim = 2;
  s.control_dim = 2;
  s.control_lower = Eigen::Vector2d(-1.0, -1.0);
  s.control_upper = Eigen::Vector2d(1.0, 1.0);
  s.horizon = 100;
  s.init_lower = Eigen::Vector2d(-4.0, -4.0);
  s.init_upper = Eigen::Vector2d(-4.0, -4.0);
  s.position = {0, 1};
  s.workspace_lower = Eigen::Vector2d(-5.0, -5.0);
  s.workspace_upper = Eigen::Vector2d(5.0, 5.0);
  return s;
}

EnvSpec EnvSpec::unicycle() {
  EnvSpec s;
  s.dynamics = DynamicsId::Unicycle;
  s.dt = 0.2;
  s.state_dim = 4;
  s.control_dim = 2;
  s.control_lower = Eigen::Vector2d(-1.0, -4.0);
  s.control_upper = Eigen::Vector2d(1.0, 4.0);
  s.horizon = 100;
  s.init_lower = Eigen::Vector4d(-4.0, -4.0, 0.0, 0.0);
  s.init_upper = Eigen::Vector4d(-4.0, -4.0, 0.0, 0.0);
  s.position = {0, 1};
  s.workspace_lower = Eigen::Vector2d(-5.0, -5.0);
  s.workspace_upper = Eigen::Vector2d(5.0, 5.0);
  return s;
}

EnvSpec EnvSpec::quadrotor() {
  EnvSpec s;
  s.dynamics = DynamicsId::Quadrotor;
  s.dt = 0.1;
  s.state_dim = 12;
  s.control_dim = 4;
  s.control_lower = Eigen::Vector4d::Zero();
  s.control_upper = Eigen::Vector4d::Constant(2.0);
  s.horizon = 100;
  s.init_lower = Eigen::VectorXd::Zero(12);
  s.init_upper = Eigen::VectorXd::Zero(12);
  s.position = {0, 1, 2};
  s.workspace_lower = Eigen::Vector3d(-5.0, -5.0, -5.0);
  s.workspace_upper = Eigen::Vector3d(5.0, 5.0, 5.0);
  return s;
}

void EnvSpec::validate() const {
  if (dt <= 0.0) throw ConfigError("env: dt must be positive");
  if (horizon < 1) throw ConfigError("env: horizon must be at least 1");
  if (control_lower.size() != control_dim || control_upper.size() != control_dim)
    throw ConfigError("env: control bounds must match the control dimension");
  for (int i = 0; i < control_dim; ++i)
    if (control_lower[i] > control_upper[i])
      throw ConfigError("env: control bounds must be ordered");
  if (init_lower.size() != state_dim || init_upper.size() != state_dim)
    throw ConfigError("env: initial box must match the state dimension");
  for (int i = 0; i < state_dim; ++i)
    if (init_lower[i] > init_upper[i]) throw ConfigError("env: initial box must be ordered");
  const int pd = static_cast<int>(position.size());
  for (int i : position)
    if (i < 0 || i >= state_dim) throw ConfigError("env: position index out of range");
  if (workspace_lower.size() != pd || workspace_upper.size() != pd)
    throw ConfigError("env: workspace must match the position dimension");
}

Eigen::VectorXd step_linear(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt) {
  return x + u * dt;
}

Eigen::VectorXd step_unicycle(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt) {
  Eigen::VectorXd next(4);
  next[0] = x[0] + x[3] * std::cos(x[2]) * dt;
  next[1] = x[1] + x[3] * std::sin(x[2]) * dt;
  next[2] = x[2] + u[0] * dt;
  next[3] = x[3] + u[1] * dt;
  return next;
}

Eigen::VectorXd step_quadrotor(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double dt,
                               double arm, double yaw_coef) {
  const Eigen::Vector3d p = x.segment<3>(0);
  const Eigen::Vector3d v = x.segment<3>(3);
  const Eigen::Vector3d ang = x.segment<3>(6);   // roll, pitch, yaw
  const Eigen::Vector3d omega = x.segment<3>(9);

  const double thrust = u.sum();
  // plus configuration: motors 1..4 sit on +x, +y, -x, -y arms
  const Eigen::Vector3d torque(arm * (u[1] - u[3]), arm * (u[2] - u[0]),
                               yaw_coef * (u[0] - u[1] + u[2] - u[3]));

  const double cr = std::cos(ang[0]), sr = std::sin(ang[0]);
  const double cp = std::cos(ang[1]), sp = std::sin(ang[1]);
  const double cy = std::cos(ang[2]), sy = std::sin(ang[2]);
  Eigen::Matrix3d rx, ry, rz;
  rx << 1, 0, 0, 0, cr, -sr, 0, sr, cr;
  ry << cp, 0, sp, 0, 1, 0, -sp, 0, cp;
  rz << cy, -sy, 0, sy, cy, 0, 0, 0, 1;
  const Eigen::Vector3d e3(0.0, 0.0, 1.0);

  Eigen::VectorXd next(12);
  next.segment<3>(0) = p + v * dt;
  next.segment<3>(3) = v + (kGravity * e3 - (thrust / kQuadMass) * (rz * ry * rx * e3)) * dt;
  next.segment<3>(6) = ang + omega * dt;
  const Eigen::Vector3d coriolis = omega.cross(kInertia.asDiagonal() * omega);
  next.segment<3>(9) = omega + kInertia.cwiseInverse().asDiagonal() * (torque - coriolis) * dt;
  return next;
}

Eigen::VectorXd step(const EnvSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  Eigen::VectorXd uc = u.cwiseMax(spec.control_lower).cwiseMin(spec.control_upper);
  switch (spec.dynamics) {
    case DynamicsId::Linear:
      return step_linear(x, uc, spec.dt);
    case DynamicsId::Unicycle:
      return step_unicycle(x, uc, spec.dt);
    case DynamicsId::Quadrotor:
      return step_quadrotor(x, uc, spec.dt, spec.quad_arm, spec.quad_yaw_coef);
  }
  throw Error("unknown dynamics id");
}

Eigen::VectorXd sample_initial(const EnvSpec& spec, Rng& rng) {
  Eigen::VectorXd x(spec.state_dim);
  for (int i = 0; i < spec.state_dim; ++i)
    x[i] = spec.init_lower[i] == spec.init_upper[i]
               ? spec.init_lower[i]
               : rng.uniform(spec.init_lower[i], spec.init_upper[i]);
  return x;
}

}  // namespace tgpo::env
