#pragma once

#include <Eigen/Core>

#include "tgpo/learn/adam.hpp"
#include "tgpo/learn/policy.hpp"
#include "tgpo/util/rng.hpp"

namespace tgpo::learn {

struct PpoConfig {
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_eps = 0.2;
  int epochs = 4;
  int minibatches = 8;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double max_grad_norm = 0.5;
  AdamConfig adam;  // lr 3e-4, decoupled weight decay 0.1
};

// Generalized advantage estimates for one contiguous segment. values carries
// one extra entry: the bootstrap value of the state after the last reward.
Eigen::VectorXd compute_gae(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                            double gamma, double lambda);

// Flattened on-policy batch. Rows of obs/actions correspond to entries of the
// vectors; advantages are raw (normalized inside the update).
struct PpoBatch {
  Eigen::MatrixXd obs;
  Eigen::MatrixXd actions;
  Eigen::VectorXd logp_old;
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
  int size() const { return static_cast<int>(logp_old.size()); }
};

struct PpoStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
};

// Clipped-surrogate update: epochs x minibatches passes with advantage
// normalization, entropy bonus, value MSE, global-norm gradient clipping.
PpoStats ppo_update(GaussianPolicy& policy, Critic& critic, MlpAdam& policy_opt,
                    MlpAdam& critic_opt, const PpoBatch& batch, const PpoConfig& cfg, Rng& rng);

// Loss pieces exposed for gradient tests.
double value_loss(const Critic& critic, const Eigen::MatrixXd& obs,
                  const Eigen::VectorXd& returns);
void value_loss_backward(const Critic& critic, const Eigen::MatrixXd& obs,
                         const Eigen::VectorXd& returns, MlpGrads& grads);
double policy_surrogate_loss(const GaussianPolicy& policy, const PpoBatch& batch,
                             const Eigen::VectorXd& advantages, double clip_eps,
                             double entropy_coef);
void policy_surrogate_backward(const GaussianPolicy& policy, const PpoBatch& batch,
                               const Eigen::VectorXd& advantages, double clip_eps,
                               double entropy_coef, MlpGrads& grads,
                               Eigen::VectorXd& log_std_grad);

}  // namespace tgpo::learn
