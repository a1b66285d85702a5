#include "tgpo/learn/rollout.hpp"

#include <stdexcept>

#include "tgpo/env/dynamics.hpp"
#include "tgpo/stl/robustness.hpp"
#include "tgpo/stl/trajectory.hpp"

namespace tgpo::learn {

RolloutResult collect_rollouts(const mdp::Task& task,
                               const std::vector<decomp::TimeAssignment>& assignments,
                               const GaussianPolicy& policy, const Critic& critic,
                               const ObservationEncoder& encoder,
                               const mdp::RewardConfig& reward_cfg, const PpoConfig& ppo_cfg,
                               int n_envs, Rng& rng) {
  if (assignments.empty()) throw std::invalid_argument("collect_rollouts: no assignments");
  if (n_envs <= 0) throw std::invalid_argument("collect_rollouts: n_envs must be positive");
  const int horizon = task.env.horizon;
  const int act_dim = task.env.control_dim;
  const int n_assign = static_cast<int>(assignments.size());

  std::vector<mdp::CompiledPlan> plans;
  plans.reserve(assignments.size());
  for (const auto& a : assignments)
    plans.emplace_back(task, decomp::ground(task.taskset, a, horizon));

  std::vector<Rng> streams;
  streams.reserve(static_cast<std::size_t>(n_envs));
  for (int e = 0; e < n_envs; ++e) streams.push_back(rng.child(static_cast<std::uint64_t>(e)));

  std::vector<mdp::AugmentedState> states(static_cast<std::size_t>(n_envs));
  std::vector<std::vector<Eigen::VectorXd>> paths(static_cast<std::size_t>(n_envs));
  for (int e = 0; e < n_envs; ++e) {
    const auto& plan = plans[static_cast<std::size_t>(e % n_assign)];
    const Eigen::VectorXd x0 = env::sample_initial(task.env, streams[static_cast<std::size_t>(e)]);
    states[static_cast<std::size_t>(e)] = mdp::reset(plan, x0);
    paths[static_cast<std::size_t>(e)].reserve(static_cast<std::size_t>(horizon) + 1);
    paths[static_cast<std::size_t>(e)].push_back(x0);
  }

  const int total = n_envs * horizon;
  RolloutResult out;
  out.batch.obs.resize(total, encoder.dim());
  out.batch.actions.resize(total, act_dim);
  out.batch.logp_old.resize(total);
  out.batch.advantages.resize(total);
  out.batch.returns.resize(total);
  Eigen::MatrixXd rewards(n_envs, horizon);

  const Eigen::VectorXd sigma = policy.stddev();
  Eigen::MatrixXd obs(n_envs, encoder.dim());
  Eigen::MatrixXd actions(n_envs, act_dim);
  for (int t = 0; t < horizon; ++t) {
    for (int e = 0; e < n_envs; ++e) {
      const auto& a = plans[static_cast<std::size_t>(e % n_assign)].assignment();
      encoder.encode_into(states[static_cast<std::size_t>(e)], a, obs.row(e));
    }
    const Eigen::MatrixXd means = policy.mean(obs);
    for (int e = 0; e < n_envs; ++e) {
      auto& stream = streams[static_cast<std::size_t>(e)];
      for (int j = 0; j < act_dim; ++j)
        actions(e, j) = means(e, j) + sigma[j] * stream.normal();
    }
    const Eigen::VectorXd logp = policy.log_prob(means, actions);
    for (int e = 0; e < n_envs; ++e) {
      const int row = e * horizon + t;
      out.batch.obs.row(row) = obs.row(e);
      out.batch.actions.row(row) = actions.row(e);
      out.batch.logp_old[row] = logp[e];
      const auto& plan = plans[static_cast<std::size_t>(e % n_assign)];
      auto outcome =
          mdp::transition(states[static_cast<std::size_t>(e)], actions.row(e).transpose(), plan,
                          reward_cfg);
      rewards(e, t) = outcome.reward;
      states[static_cast<std::size_t>(e)] = std::move(outcome.next);
      paths[static_cast<std::size_t>(e)].push_back(states[static_cast<std::size_t>(e)].x);
    }
  }

  const Eigen::VectorXd values_flat = critic.values(out.batch.obs);
  out.episodes.resize(static_cast<std::size_t>(n_envs));
  for (int e = 0; e < n_envs; ++e) {
    stl::Trajectory traj(paths[static_cast<std::size_t>(e)], task.env.dt);
    const double rho = stl::robustness(traj, 0, task.formula, task.regions);
    if (reward_cfg.use_terminal_robustness)
      rewards(e, horizon - 1) += reward_cfg.lambda_rho * rho;

    Eigen::VectorXd vals(horizon + 1);
    vals.head(horizon) = values_flat.segment(e * horizon, horizon);
    vals[horizon] = 0.0;
    const Eigen::VectorXd adv =
        compute_gae(rewards.row(e).transpose(), vals, ppo_cfg.gamma, ppo_cfg.gae_lambda);
    out.batch.advantages.segment(e * horizon, horizon) = adv;
    out.batch.returns.segment(e * horizon, horizon) = adv + vals.head(horizon);

    auto& ep = out.episodes[static_cast<std::size_t>(e)];
    ep.assignment_index = e % n_assign;
    ep.robustness = rho;
    ep.total_return = rewards.row(e).sum();
    ep.success = rho >= 0.0;
    out.mean_return += ep.total_return;
    out.mean_robustness += rho;
    out.success_rate += ep.success ? 1.0 : 0.0;
  }
  out.mean_return /= n_envs;
  out.mean_robustness /= n_envs;
  out.success_rate /= n_envs;
  return out;
}

}  // namespace tgpo::learn
