#include "tgpo/learn/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tgpo/util/error.hpp"

namespace tgpo::learn {

Eigen::VectorXd compute_gae(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                            double gamma, double lambda) {
  const int n = static_cast<int>(rewards.size());
  if (values.size() != n + 1)
    throw std::invalid_argument("compute_gae: values must have one extra entry");
  Eigen::VectorXd adv(n);
  double carry = 0.0;
  for (int t = n - 1; t >= 0; --t) {
    const double delta = rewards[t] + gamma * values[t + 1] - values[t];
    carry = delta + gamma * lambda * carry;
    adv[t] = carry;
  }
  return adv;
}

namespace {

Eigen::ArrayXd in_band_mask(const Eigen::VectorXd& raw_log_std) {
  return ((raw_log_std.array() >= GaussianPolicy::kLogStdMin) &&
          (raw_log_std.array() <= GaussianPolicy::kLogStdMax))
      .cast<double>();
}

PpoBatch slice_batch(const PpoBatch& batch, const std::vector<int>& idx, int begin, int count) {
  PpoBatch out;
  out.obs.resize(count, batch.obs.cols());
  out.actions.resize(count, batch.actions.cols());
  out.logp_old.resize(count);
  out.advantages.resize(count);
  out.returns.resize(count);
  for (int i = 0; i < count; ++i) {
    const int src = idx[static_cast<std::size_t>(begin + i)];
    out.obs.row(i) = batch.obs.row(src);
    out.actions.row(i) = batch.actions.row(src);
    out.logp_old[i] = batch.logp_old[src];
    out.advantages[i] = batch.advantages[src];
    out.returns[i] = batch.returns[src];
  }
  return out;
}

Eigen::VectorXd normalize_advantages(const Eigen::VectorXd& adv) {
  const int n = static_cast<int>(adv.size());
  if (n == 0) return adv;
  const double mean = adv.mean();
  const double var = (adv.array() - mean).square().sum() / n;
  return ((adv.array() - mean) / (std::sqrt(var) + 1e-8)).matrix();
}

}  // namespace

double value_loss(const Critic& critic, const Eigen::MatrixXd& obs,
                  const Eigen::VectorXd& returns) {
  const Eigen::VectorXd v = critic.values(obs);
  return (v - returns).squaredNorm() / static_cast<double>(returns.size());
}

void value_loss_backward(const Critic& critic, const Eigen::MatrixXd& obs,
                         const Eigen::VectorXd& returns, MlpGrads& grads) {
  Mlp::Cache cache;
  const Eigen::MatrixXd v = critic.net.forward(obs, cache);
  Eigen::MatrixXd grad_out =
      2.0 * (v.col(0) - returns) / static_cast<double>(returns.size());
  critic.net.backward(cache, grad_out, grads);
}

double policy_surrogate_loss(const GaussianPolicy& policy, const PpoBatch& batch,
                             const Eigen::VectorXd& advantages, double clip_eps,
                             double entropy_coef) {
  const Eigen::MatrixXd means = policy.mean(batch.obs);
  const Eigen::VectorXd logp = policy.log_prob(means, batch.actions);
  const Eigen::ArrayXd ratio = (logp - batch.logp_old).array().exp();
  const Eigen::ArrayXd surr1 = ratio * advantages.array();
  const Eigen::ArrayXd surr2 =
      ratio.min(1.0 + clip_eps).max(1.0 - clip_eps) * advantages.array();
  const double pg = -surr1.min(surr2).mean();
  return pg - entropy_coef * policy.entropy();
}

void policy_surrogate_backward(const GaussianPolicy& policy, const PpoBatch& batch,
                               const Eigen::VectorXd& advantages, double clip_eps,
                               double entropy_coef, MlpGrads& grads,
                               Eigen::VectorXd& log_std_grad) {
  const int n = static_cast<int>(batch.logp_old.size());
  Mlp::Cache cache;
  const Eigen::MatrixXd means = policy.net.forward(batch.obs, cache);
  const Eigen::VectorXd ls = policy.clamped_log_std();
  const Eigen::ArrayXd inv_var = (-2.0 * ls.array()).exp();
  const Eigen::ArrayXXd diff = (batch.actions - means).array();

  const Eigen::VectorXd logp = policy.log_prob(means, batch.actions);
  const Eigen::ArrayXd ratio = (logp - batch.logp_old).array().exp();
  const Eigen::ArrayXd surr1 = ratio * advantages.array();
  const Eigen::ArrayXd surr2 =
      ratio.min(1.0 + clip_eps).max(1.0 - clip_eps) * advantages.array();
  // min() selects surr1 wherever the gradient flows; a clipped winner has
  // zero derivative in ratio.
  const Eigen::ArrayXd g_logp =
      (surr1 <= surr2).cast<double>() * (-advantages.array() * ratio) / n;

  Eigen::MatrixXd grad_mean =
      ((diff.colwise() * g_logp).rowwise() * inv_var.transpose()).matrix();
  policy.net.backward(cache, grad_mean, grads);

  // d logp / d log_std_j = diff_j^2 * inv_var_j - 1, plus the entropy bonus;
  // zeroed where the raw parameter sits outside the clamp band.
  const Eigen::ArrayXd band = in_band_mask(policy.log_std);
  Eigen::ArrayXd g_ls =
      ((diff.square().rowwise() * inv_var.transpose()).colwise() * g_logp)
          .colwise()
          .sum()
          .transpose();
  g_ls -= g_logp.sum();
  g_ls -= entropy_coef;
  log_std_grad = (g_ls * band).matrix();
}

PpoStats ppo_update(GaussianPolicy& policy, Critic& critic, MlpAdam& policy_opt,
                    MlpAdam& critic_opt, const PpoBatch& batch, const PpoConfig& cfg,
                    Rng& rng) {
  const int n = batch.size();
  if (n < cfg.minibatches) throw Error("ppo_update: batch smaller than minibatch count");
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);

  PpoStats stats;
  int updates = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(idx.begin(), idx.end(), rng.engine());
    const int base = n / cfg.minibatches;
    const int rem = n % cfg.minibatches;
    int at = 0;
    for (int mb = 0; mb < cfg.minibatches; ++mb) {
      const int count = base + (mb < rem ? 1 : 0);
      if (count == 0) continue;
      PpoBatch sub = slice_batch(batch, idx, at, count);
      at += count;
      const Eigen::VectorXd adv = normalize_advantages(sub.advantages);

      MlpGrads pg = policy.net.zero_grads();
      Eigen::VectorXd ls_grad = Eigen::VectorXd::Zero(policy.act_dim());
      policy_surrogate_backward(policy, sub, adv, cfg.clip_eps, cfg.entropy_coef, pg, ls_grad);
      clip_grad_norm(pg, cfg.max_grad_norm, &ls_grad);
      policy_opt.step(policy.net, pg, policy.log_std, ls_grad);
      // keep the raw parameter inside the clamp band so its gradient stays live
      policy.log_std = policy.log_std.cwiseMax(GaussianPolicy::kLogStdMin)
                           .cwiseMin(GaussianPolicy::kLogStdMax);

      MlpGrads vg = critic.net.zero_grads();
      value_loss_backward(critic, sub.obs, sub.returns, vg);
      vg.scale(cfg.value_coef);
      clip_grad_norm(vg, cfg.max_grad_norm);
      critic_opt.step(critic.net, vg);

      // diagnostics on the post-slice, pre-step quantities
      const Eigen::MatrixXd means = policy.mean(sub.obs);
      const Eigen::VectorXd logp = policy.log_prob(means, sub.actions);
      const Eigen::ArrayXd ratio = (logp - sub.logp_old).array().exp();
      stats.policy_loss += policy_surrogate_loss(policy, sub, adv, cfg.clip_eps, 0.0);
      stats.value_loss += value_loss(critic, sub.obs, sub.returns);
      stats.entropy += policy.entropy();
      stats.approx_kl += (sub.logp_old - logp).mean();
      stats.clip_fraction +=
          ((ratio - 1.0).abs() > cfg.clip_eps).cast<double>().mean();
      ++updates;
    }
  }
  if (updates > 0) {
    stats.policy_loss /= updates;
    stats.value_loss /= updates;
    stats.entropy /= updates;
    stats.approx_kl /= updates;
    stats.clip_fraction /= updates;
  }
  if (!std::isfinite(stats.policy_loss) || !std::isfinite(stats.value_loss))
    throw Error("ppo_update: non-finite loss");
  return stats;
}

}  // namespace tgpo::learn
