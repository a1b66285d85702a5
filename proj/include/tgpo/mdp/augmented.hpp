#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "tgpo/decomp/taskset.hpp"
#include "tgpo/mdp/task.hpp"

namespace tgpo::mdp {

// Progress-augmented state: raw state, step counter, completed-subgoal count
// p (with its previous value), the entry/exit certificate r, and one
// monotone flag per invariant constraint (1 = never violated in-window).
struct AugmentedState {
  Eigen::VectorXd x;
  int tau = 0;
  int p_prev = 0;
  int p = 0;
  int r = 0;
  std::vector<std::uint8_t> chi;
};

struct StepOutcome {
  AugmentedState next;
  double reward = 0.0;
  bool done = false;
};

enum class PenaltyMode { Once, Persistent };

// Stage reward weights and switches. The four stage terms can be disabled
// individually; the terminal robustness bonus is applied by the episode
// runner, scaled by lambda_rho.
struct RewardConfig {
  double lambda_dist = 0.5;
  double lambda_progress = 20.0;
  double lambda_success = 20.0;
  double lambda_inv = -3.0;
  double lambda_rho = 1.0;
  bool use_dist = true;
  bool use_progress = true;
  bool use_success = true;
  bool use_inv = true;
  bool use_terminal_robustness = true;
  PenaltyMode inv_mode = PenaltyMode::Once;
  PenaltyMode success_mode = PenaltyMode::Once;
};

// A grounded plan bound to its regions and plant, ready to step. Subgoal
// order follows the plan's start-time sort.
class CompiledPlan {
 public:
  struct TimedSubgoal {
    stl::Region region;
    int start = 0;
    int end = 0;
    decomp::SubgoalKind kind = decomp::SubgoalKind::Reach;
  };
  struct TimedConstraint {
    stl::Region region;
    int start = 0;
    int end = 0;
  };

  CompiledPlan(const Task& task, const decomp::GroundedPlan& plan);

  int n_subgoals() const { return static_cast<int>(subgoals_.size()); }
  int n_constraints() const { return static_cast<int>(constraints_.size()); }
  int horizon() const { return env_.horizon; }
  const env::EnvSpec& env() const { return env_; }
  const TimedSubgoal& subgoal(int i) const { return subgoals_[i]; }
  const TimedConstraint& constraint(int i) const { return constraints_[i]; }
  const decomp::TimeAssignment& assignment() const { return assignment_; }

 private:
  env::EnvSpec env_;
  std::vector<TimedSubgoal> subgoals_;
  std::vector<TimedConstraint> constraints_;
  decomp::TimeAssignment assignment_;
};

// Certificate update: r=2 clears first; an interval subgoal arms (r=1) when
// its entry time is met inside the region; an armed or instantaneous subgoal
// completes (r=2) when its exit time is met inside the region.
int certificate(int r, double mu, int tau_next, int lo, int hi);

bool all_flags(const AugmentedState& s);

// Fresh state at tau=0 with the step-0 membership checks applied, so windows
// touching 0 register immediately.
AugmentedState reset(const CompiledPlan& plan, const Eigen::VectorXd& x0);

// One step: plant update, certificate, flag updates, stage reward. Throws
// when the state is already done.
StepOutcome transition(const AugmentedState& s, const Eigen::VectorXd& u, const CompiledPlan& plan,
                       const RewardConfig& cfg);

// Stage reward of a transition that already happened (exposed for tests).
double reward(const AugmentedState& prev, const AugmentedState& next, const CompiledPlan& plan,
              const RewardConfig& cfg);

}  // namespace tgpo::mdp
