#include "tgpo/harness/score.hpp"

namespace tgpo::harness {

Eigen::VectorXd init_box_midpoint(const env::EnvSpec& spec) {
  return 0.5 * (spec.init_lower + spec.init_upper);
}

mdp::AugmentedState initial_state_for(const mdp::Task& task, const decomp::TimeAssignment& a,
                                      const Eigen::VectorXd& x0) {
  if (auto plan = decomp::try_ground(task.taskset, a, task.env.horizon)) {
    mdp::CompiledPlan compiled(task, *plan);
    return mdp::reset(compiled, x0);
  }
  mdp::AugmentedState s;
  s.x = x0;
  s.chi.assign(task.taskset.constraints.size(), 1);
  return s;
}

ground::BatchScoreFn critic_score(const mdp::Task& task, const learn::Critic& critic,
                                  const learn::ObservationEncoder& encoder, Eigen::VectorXd x0) {
  return [&task, &critic, &encoder, x0](const std::vector<decomp::TimeAssignment>& batch) {
    Eigen::MatrixXd obs(batch.size(), encoder.dim());
    for (size_t i = 0; i < batch.size(); ++i) {
      mdp::AugmentedState s = initial_state_for(task, batch[i], x0);
      encoder.encode_into(s, batch[i], obs.row(static_cast<Eigen::Index>(i)));
    }
    return critic.values(obs);
  };
}

}  // namespace tgpo::harness
