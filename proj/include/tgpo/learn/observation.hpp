#pragma once

#include <Eigen/Core>
#include <vector>

#include "tgpo/decomp/taskset.hpp"
#include "tgpo/mdp/augmented.hpp"
#include "tgpo/mdp/task.hpp"

namespace tgpo::learn {

// Ablation switches for the policy/critic input. `time` gates the step
// counter and the assigned times; `flags` gates the progress block.
struct StateFields {
  bool time = true;
  bool flags = true;
};

// Maps (augmented state, time assignment) to a fixed-width feature row:
//   [ x_norm | tau/T | p/N_g | r/2 | chi bits | per-variable t_norm ]
// with the gated blocks removed entirely when switched off. x_norm maps the
// position block through the workspace box and the remaining dimensions
// through per-plant scales, clamped to [-1, 1].
class ObservationEncoder {
 public:
  ObservationEncoder(const mdp::Task& task, StateFields fields = {});

  int dim() const { return dim_; }
  const StateFields& fields() const { return fields_; }

  Eigen::VectorXd encode(const mdp::AugmentedState& s,
                         const decomp::TimeAssignment& assignment) const;
  void encode_into(const mdp::AugmentedState& s, const decomp::TimeAssignment& assignment,
                   Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> out) const;

 private:
  StateFields fields_;
  int state_dim_ = 0;
  int n_goals_ = 0;
  int n_constraints_ = 0;
  int horizon_ = 1;
  Eigen::VectorXd center_;    // per state dimension
  Eigen::VectorXd halfspan_;  // per state dimension, > 0
  std::vector<decomp::TimeVariable> variables_;
  int dim_ = 0;
};

}  // namespace tgpo::learn
