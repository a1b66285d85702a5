#include "tgpo/learn/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace tgpo::learn {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;  // log(2*pi)
}

GaussianPolicy::GaussianPolicy(int obs_dim, const std::vector<int>& hidden, int act_dim,
                               Rng& rng, double log_std_init)
    : net(obs_dim, hidden, act_dim) {
  net.init_orthogonal(rng, std::sqrt(2.0), 0.01);
  log_std = Eigen::VectorXd::Constant(act_dim, log_std_init);
}

Eigen::VectorXd GaussianPolicy::clamped_log_std() const {
  return log_std.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
}

Eigen::VectorXd GaussianPolicy::stddev() const {
  return clamped_log_std().array().exp().matrix();
}

Eigen::VectorXd GaussianPolicy::log_prob(const Eigen::MatrixXd& means,
                                         const Eigen::MatrixXd& actions) const {
  if (means.rows() != actions.rows() || means.cols() != actions.cols())
    throw std::invalid_argument("log_prob: shape mismatch");
  const Eigen::VectorXd ls = clamped_log_std();
  const Eigen::ArrayXd inv_var = (-2.0 * ls.array()).exp();
  const double log_norm = ls.sum() + 0.5 * kLog2Pi * static_cast<double>(ls.size());
  Eigen::ArrayXXd d = (actions - means).array();
  Eigen::VectorXd lp =
      (-0.5 * (d.square().rowwise() * inv_var.transpose()).rowwise().sum()).matrix();
  lp.array() -= log_norm;
  return lp;
}

double GaussianPolicy::entropy() const {
  const Eigen::VectorXd ls = clamped_log_std();
  return ls.sum() + 0.5 * (1.0 + kLog2Pi) * static_cast<double>(ls.size());
}

Critic::Critic(int obs_dim, const std::vector<int>& hidden, Rng& rng)
    : net(obs_dim, hidden, 1) {
  net.init_orthogonal(rng, std::sqrt(2.0), 1.0);
}

Eigen::VectorXd Critic::values(const Eigen::MatrixXd& obs) const {
  return net.forward(obs).col(0);
}

double Critic::value(const Eigen::VectorXd& obs) const {
  return net.forward(obs.transpose())(0, 0);
}

}  // namespace tgpo::learn
