#pragma once

#include <vector>

#include "tgpo/decomp/taskset.hpp"
#include "tgpo/learn/observation.hpp"
#include "tgpo/learn/policy.hpp"
#include "tgpo/learn/ppo.hpp"
#include "tgpo/mdp/augmented.hpp"
#include "tgpo/mdp/task.hpp"

namespace tgpo::learn {

// One finished environment's episode summary.
struct EpisodeSummary {
  int assignment_index = 0;  // index into the assignment list handed in
  double robustness = 0.0;
  double total_return = 0.0;
  bool success = false;
};

struct RolloutResult {
  PpoBatch batch;  // env-major: rows [e*T, (e+1)*T) belong to env e
  std::vector<EpisodeSummary> episodes;
  double mean_return = 0.0;
  double mean_robustness = 0.0;
  double success_rate = 0.0;
};

// Runs n_envs full-horizon episodes under the stochastic policy. Env e uses
// assignments[e % assignments.size()]. Per-env noise comes from child streams
// of rng, so results do not depend on evaluation order. Values bootstrap with
// zero past the horizon (the task ends there).
RolloutResult collect_rollouts(const mdp::Task& task,
                               const std::vector<decomp::TimeAssignment>& assignments,
                               const GaussianPolicy& policy, const Critic& critic,
                               const ObservationEncoder& encoder,
                               const mdp::RewardConfig& reward_cfg, const PpoConfig& ppo_cfg,
                               int n_envs, Rng& rng);

}  // namespace tgpo::learn
