#pragma once

#include <functional>
#include <string>

#include "tgpo/mdp/augmented.hpp"
#include "tgpo/stl/trajectory.hpp"

namespace tgpo::mdp {

// Full-horizon episode record. rewards[t] is the reward of the transition
// arriving at step t (index 0 is zero); the terminal robustness bonus is
// folded into the last entry when enabled.
struct EpisodeResult {
  stl::Trajectory sigma;
  std::vector<AugmentedState> states;
  std::vector<double> rewards;
  double robustness = 0.0;
  double total_return = 0.0;
  bool success = false;
};

using PolicyFn = std::function<Eigen::VectorXd(const AugmentedState&)>;

// Rolls one episode from x0 under the policy, monitors the result, and
// applies the terminal bonus.
EpisodeResult run_episode(const Task& task, const CompiledPlan& plan, const RewardConfig& cfg,
                          const PolicyFn& policy, const Eigen::VectorXd& x0);

// Trace CSV with columns t, x..., p, r, chi_bitmask, reward.
void write_trace(const EpisodeResult& episode, const std::string& path);

}  // namespace tgpo::mdp
