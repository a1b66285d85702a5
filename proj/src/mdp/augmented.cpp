#include "tgpo/mdp/augmented.hpp"

#include "tgpo/decomp/decompose.hpp"
#include "tgpo/env/dynamics.hpp"
#include "tgpo/util/error.hpp"

namespace tgpo::mdp {

Task make_task(const env::SceneSpec& scene) {
  Task t;
  t.env = scene.env;
  t.regions = scene.regions;
  t.formula = scene.formula;
  t.taskset = decomp::decompose(scene.formula);
  return t;
}

CompiledPlan::CompiledPlan(const Task& task, const decomp::GroundedPlan& plan)
    : env_(task.env), assignment_(plan.assignment) {
  for (const auto& w : plan.subgoals) {
    const decomp::Subgoal& sg = task.taskset.subgoals[w.source_index];
    subgoals_.push_back({task.regions.at(sg.label), w.start, w.end, sg.kind});
  }
  for (const auto& w : plan.constraints) {
    const decomp::InvariantConstraint& c = task.taskset.constraints[w.source_index];
    constraints_.push_back({task.regions.at(c.label), w.start, w.end});
  }
}

int certificate(int r, double mu, int tau_next, int lo, int hi) {
  if (r == 2) return 0;
  if (lo != hi && tau_next == lo && mu >= 0.0) return 1;
  if ((r == 1 || lo == hi) && tau_next == hi && mu >= 0.0) return 2;
  return r;
}

bool all_flags(const AugmentedState& s) {
  for (std::uint8_t f : s.chi)
    if (!f) return false;
  return true;
}

namespace {

// Applies the certificate against the next uncompleted subgoal and the
// in-window flag checks at time tau_next.
void apply_checks(AugmentedState& s, int tau_next, const CompiledPlan& plan) {
  if (s.p < plan.n_subgoals()) {
    const auto& g = plan.subgoal(s.p);
    s.r = certificate(s.r, g.region.value(s.x), tau_next, g.start, g.end);
    if (s.r == 2) s.p += 1;
  } else if (s.r == 2) {
    s.r = 0;
  }
  for (int k = 0; k < plan.n_constraints(); ++k) {
    const auto& c = plan.constraint(k);
    if (c.start <= tau_next && tau_next <= c.end && c.region.value(s.x) >= 0.0) s.chi[k] = 0;
  }
}

}  // namespace

AugmentedState reset(const CompiledPlan& plan, const Eigen::VectorXd& x0) {
  AugmentedState s;
  s.x = x0;
  s.tau = 0;
  s.p_prev = 0;
  s.p = 0;
  s.r = 0;
  s.chi.assign(plan.n_constraints(), 1);
  apply_checks(s, 0, plan);
  return s;
}

double reward(const AugmentedState& prev, const AugmentedState& next, const CompiledPlan& plan,
              const RewardConfig& cfg) {
  double total = 0.0;
  if (cfg.use_dist && next.p < plan.n_subgoals())
    total += cfg.lambda_dist * plan.subgoal(next.p).region.value(next.x);
  if (cfg.use_progress && next.p_prev != next.p) total += cfg.lambda_progress;
  if (cfg.use_success) {
    const bool attained = next.p == plan.n_subgoals() && all_flags(next);
    const bool fresh = prev.p != plan.n_subgoals();
    if (attained && (cfg.success_mode == PenaltyMode::Persistent || fresh))
      total += cfg.lambda_success;
  }
  if (cfg.use_inv) {
    int count = 0;
    for (size_t k = 0; k < next.chi.size(); ++k) {
      if (cfg.inv_mode == PenaltyMode::Persistent)
        count += next.chi[k] == 0;
      else
        count += prev.chi[k] == 1 && next.chi[k] == 0;
    }
    total += cfg.lambda_inv * count;
  }
  return total;
}

StepOutcome transition(const AugmentedState& s, const Eigen::VectorXd& u, const CompiledPlan& plan,
                       const RewardConfig& cfg) {
  if (s.tau >= plan.horizon()) throw Error("transition on a finished episode");

  StepOutcome out;
  out.next.x = env::step(plan.env(), s.x, u);
  out.next.tau = s.tau + 1;
  out.next.p_prev = s.p;
  out.next.p = s.p;
  out.next.r = s.r;
  out.next.chi = s.chi;
  apply_checks(out.next, out.next.tau, plan);

  out.reward = reward(s, out.next, plan, cfg);
  out.done = out.next.tau == plan.horizon();
  return out;
}

}  // namespace tgpo::mdp
