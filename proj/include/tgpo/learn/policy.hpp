#pragma once

#include <Eigen/Core>
#include <vector>

#include "tgpo/learn/mlp.hpp"
#include "tgpo/util/rng.hpp"

namespace tgpo::learn {

// Diagonal Gaussian policy: tanh network for the mean, one state-independent
// log-std parameter per action dimension, clamped on use.
class GaussianPolicy {
 public:
  static constexpr double kLogStdMin = -5.0;
  static constexpr double kLogStdMax = 2.0;

  GaussianPolicy(int obs_dim, const std::vector<int>& hidden, int act_dim, Rng& rng,
                 double log_std_init = 0.0);

  int act_dim() const { return static_cast<int>(log_std.size()); }

  Eigen::MatrixXd mean(const Eigen::MatrixXd& obs) const { return net.forward(obs); }
  Eigen::VectorXd clamped_log_std() const;
  Eigen::VectorXd stddev() const;

  // Per-row log densities of actions under N(mean, diag(stddev^2)).
  Eigen::VectorXd log_prob(const Eigen::MatrixXd& means, const Eigen::MatrixXd& actions) const;

  // Differential entropy of one action draw (state independent).
  double entropy() const;

  Mlp net;
  Eigen::VectorXd log_std;
};

class Critic {
 public:
  Critic(int obs_dim, const std::vector<int>& hidden, Rng& rng);

  // One value per row.
  Eigen::VectorXd values(const Eigen::MatrixXd& obs) const;
  double value(const Eigen::VectorXd& obs) const;

  Mlp net;
};

}  // namespace tgpo::learn
