#pragma once

#include <Eigen/Core>

#include "tgpo/ground/sampler.hpp"
#include "tgpo/learn/observation.hpp"
#include "tgpo/learn/policy.hpp"
#include "tgpo/mdp/augmented.hpp"
#include "tgpo/mdp/task.hpp"

namespace tgpo::harness {

Eigen::VectorXd init_box_midpoint(const env::EnvSpec& spec);

// Initial augmented state of an assignment at x0. Assignments the horizon
// cannot hold get fresh flags without the step-0 checks, so value queries
// stay defined on every grid cell.
mdp::AugmentedState initial_state_for(const mdp::Task& task, const decomp::TimeAssignment& a,
                                      const Eigen::VectorXd& x0);

// Assignment score = critic value of the initial augmented state at x0, one
// batched network pass per call. The referenced objects must outlive the
// returned closure.
ground::BatchScoreFn critic_score(const mdp::Task& task, const learn::Critic& critic,
                                  const learn::ObservationEncoder& encoder, Eigen::VectorXd x0);

}  // namespace tgpo::harness
