#include "tgpo/mdp/episode.hpp"

#include <fstream>
#include <iomanip>
#include <numeric>

#include "tgpo/stl/robustness.hpp"
#include "tgpo/util/error.hpp"

namespace tgpo::mdp {

EpisodeResult run_episode(const Task& task, const CompiledPlan& plan, const RewardConfig& cfg,
                          const PolicyFn& policy, const Eigen::VectorXd& x0) {
  EpisodeResult ep;
  AugmentedState s = reset(plan, x0);
  ep.sigma.append(s.x);
  ep.states.push_back(s);
  ep.rewards.push_back(0.0);

  while (s.tau < plan.horizon()) {
    StepOutcome out = transition(s, policy(s), plan, cfg);
    s = out.next;
    ep.sigma.append(s.x);
    ep.states.push_back(s);
    ep.rewards.push_back(out.reward);
  }

  ep.robustness = stl::robustness(ep.sigma, 0, task.formula, task.regions);
  ep.success = ep.robustness >= 0.0;
  if (cfg.use_terminal_robustness) ep.rewards.back() += cfg.lambda_rho * ep.robustness;
  ep.total_return = std::accumulate(ep.rewards.begin(), ep.rewards.end(), 0.0);
  return ep;
}

void write_trace(const EpisodeResult& episode, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  const int dim = episode.sigma.state_dim();
  f << "t";
  for (int i = 0; i < dim; ++i) f << ",x" << i;
  f << ",p,r,chi_bitmask,reward\n";
  f << std::setprecision(17);
  for (size_t t = 0; t < episode.states.size(); ++t) {
    const AugmentedState& s = episode.states[t];
    f << t;
    for (int i = 0; i < dim; ++i) f << "," << s.x[i];
    std::uint64_t mask = 0;
    for (size_t k = 0; k < s.chi.size(); ++k)
      if (s.chi[k]) mask |= (std::uint64_t{1} << k);
    f << "," << s.p << "," << s.r << "," << mask << "," << episode.rewards[t] << "\n";
  }
}

}  // namespace tgpo::mdp
