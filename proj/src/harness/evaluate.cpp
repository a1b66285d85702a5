#include "tgpo/harness/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>

#include "tgpo/env/dynamics.hpp"
#include "tgpo/harness/score.hpp"
#include "tgpo/stl/robustness.hpp"
#include "tgpo/util/error.hpp"

namespace tgpo::harness {
namespace {

constexpr std::uint64_t kSaltInitState = 0x10000;
constexpr std::uint64_t kSaltChains = 0x20000;
constexpr std::uint64_t kSaltUniform = 0x30000;

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

decomp::TimeAssignment midpoint_assignment(const decomp::TaskSet& ts) {
  decomp::TimeAssignment a;
  a.reserve(ts.variables.size());
  for (const auto& v : ts.variables) a.push_back(v.lo + (v.hi - v.lo) / 2);
  return a;
}

Eigen::VectorXd rank_with_ties(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ca = a.array() - a.mean();
  const Eigen::VectorXd cb = b.array() - b.mean();
  const double denom = std::sqrt(ca.squaredNorm() * cb.squaredNorm());
  if (denom == 0.0) return 0.0;
  return ca.dot(cb) / denom;
}

}  // namespace

learn::GaussianPolicy load_policy(const Checkpoint& ck) {
  if (!ck.policy_net) throw ConfigError("checkpoint: no policy weights");
  Rng scratch(0);
  learn::GaussianPolicy policy(ck.obs_dim, ck.hidden, ck.act_dim, scratch);
  policy.net = *ck.policy_net;
  policy.log_std = ck.log_std;
  return policy;
}

learn::Critic load_critic(const Checkpoint& ck) {
  if (!ck.critic_net) throw ConfigError("checkpoint: no critic weights");
  Rng scratch(0);
  learn::Critic critic(ck.obs_dim, ck.hidden, scratch);
  critic.net = *ck.critic_net;
  return critic;
}

double raw_rollout_robustness(const mdp::Task& task, const learn::Mlp& net,
                              const learn::ObservationEncoder& encoder,
                              const decomp::TimeAssignment& encode_assignment,
                              const Eigen::VectorXd& x0) {
  mdp::AugmentedState s;
  s.x = x0;
  s.chi.assign(task.taskset.constraints.size(), 1);
  std::vector<Eigen::VectorXd> states = {x0};
  for (int t = 0; t < task.env.horizon; ++t) {
    Eigen::VectorXd obs = encoder.encode(s, encode_assignment);
    Eigen::VectorXd u = net.forward(obs.transpose()).row(0).transpose();
    s.x = env::step(task.env, s.x, u);
    s.tau += 1;
    states.push_back(s.x);
  }
  stl::Trajectory traj(states, task.env.dt);
  return stl::robustness(traj, 0, task.formula, task.regions);
}

double rollout_robustness(const mdp::Task& task, const learn::GaussianPolicy& policy,
                          const learn::ObservationEncoder& encoder,
                          const decomp::TimeAssignment& assignment, const Eigen::VectorXd& x0) {
  decomp::GroundedPlan plan = decomp::ground(task.taskset, assignment, task.env.horizon);
  mdp::CompiledPlan compiled(task, plan);
  mdp::RewardConfig unused;
  mdp::AugmentedState s = mdp::reset(compiled, x0);
  std::vector<Eigen::VectorXd> states = {x0};
  for (int t = 0; t < task.env.horizon; ++t) {
    Eigen::VectorXd obs = encoder.encode(s, assignment);
    Eigen::VectorXd u = policy.net.forward(obs.transpose()).row(0).transpose();
    mdp::StepOutcome out = mdp::transition(s, u, compiled, unused);
    s = std::move(out.next);
    states.push_back(s.x);
  }
  stl::Trajectory traj(states, task.env.dt);
  return stl::robustness(traj, 0, task.formula, task.regions);
}

EvalReport evaluate(const Checkpoint& ck, const env::SceneSpec& scene, const RunConfig& cfg,
                    Rng& rng) {
  const auto started = std::chrono::steady_clock::now();
  if (ck.task != task_hash(scene))
    throw ConfigError("eval: checkpoint was trained on a different task than '" + scene.name +
                      "'");
  mdp::Task task = mdp::make_task(scene);
  learn::ObservationEncoder encoder(task, ck.fields);
  if (encoder.dim() != ck.obs_dim)
    throw ConfigError("eval: checkpoint observation width does not match the scene");
  learn::GaussianPolicy policy = load_policy(ck);
  const bool cem = ck.kind == CheckpointKind::Cem;
  std::optional<learn::Critic> critic;
  if (!cem) critic = load_critic(ck);

  const auto& ts = task.taskset;
  const int horizon = task.env.horizon;
  const int n_vars = ts.n_variables();

  EvalReport report;
  int n_success = 0;
  for (int i = 0; i < cfg.eval_n_init; ++i) {
    Rng init_rng = rng.child(kSaltInitState + static_cast<std::uint64_t>(i));
    const Eigen::VectorXd x0 = env::sample_initial(task.env, init_rng);

    decomp::TimeAssignment chosen;
    double rho = 0.0;
    if (cem) {
      chosen = midpoint_assignment(ts);
      rho = raw_rollout_robustness(task, policy.net, encoder, chosen, x0);
    } else if (n_vars == 0) {
      rho = rollout_robustness(task, policy, encoder, chosen, x0);
    } else {
      ground::BatchScoreFn score = critic_score(task, *critic, encoder, x0);
      const double ratio_sum = cfg.sampler.ratio_uniform + cfg.sampler.ratio_mcmc;
      int n_mcmc = 0;
      if (ratio_sum > 0.0)
        n_mcmc = static_cast<int>(cfg.eval_n_candidates * cfg.sampler.ratio_mcmc / ratio_sum);
      std::vector<decomp::TimeAssignment> candidates;
      candidates.reserve(cfg.eval_n_candidates);
      if (n_mcmc > 0) {
        ground::SamplerConfig chain_cfg = cfg.sampler;
        chain_cfg.n_chains = n_mcmc;
        Rng chain_rng = rng.child(kSaltChains + static_cast<std::uint64_t>(i));
        for (auto& a : ground::mh_sample(ts, horizon, score, chain_cfg, chain_rng))
          candidates.push_back(std::move(a));
      }
      Rng uni_rng = rng.child(kSaltUniform + static_cast<std::uint64_t>(i));
      while (static_cast<int>(candidates.size()) < cfg.eval_n_candidates)
        candidates.push_back(decomp::sample_uniform(ts, horizon, uni_rng));

      const Eigen::VectorXd values = score(candidates);
      Eigen::Index best = 0;
      values.maxCoeff(&best);
      chosen = candidates[static_cast<size_t>(best)];
      rho = rollout_robustness(task, policy, encoder, chosen, x0);
    }

    const bool ok = rho >= 0.0;
    n_success += ok ? 1 : 0;
    report.success.push_back(ok ? 1 : 0);
    report.robustness.push_back(rho);
    report.chosen.push_back(std::move(chosen));
  }
  report.success_rate = static_cast<double>(n_success) / cfg.eval_n_init;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

void write_eval_csv(const EvalReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("eval: cannot write '" + path + "'");
  const size_t n_vars = report.chosen.empty() ? 0 : report.chosen.front().size();
  out << "init,success,robustness";
  for (size_t v = 0; v < n_vars; ++v) out << ",t" << v;
  out << '\n';
  for (size_t i = 0; i < report.success.size(); ++i) {
    out << i << ',' << static_cast<int>(report.success[i]) << ','
        << csv_num(report.robustness[i]);
    for (int t : report.chosen[i]) out << ',' << t;
    out << '\n';
  }
}

Heatmap critic_heatmap(const Checkpoint& ck, const env::SceneSpec& scene, std::uint64_t seed) {
  mdp::Task task = mdp::make_task(scene);
  const auto& ts = task.taskset;
  if (ts.n_variables() < 2)
    throw ConfigError("heatmap: needs a task with at least two time variables");
  if (ck.task != task_hash(scene))
    throw ConfigError("heatmap: checkpoint was trained on a different task");
  learn::ObservationEncoder encoder(task, ck.fields);
  if (encoder.dim() != ck.obs_dim)
    throw ConfigError("heatmap: checkpoint observation width does not match the scene");
  learn::Critic critic = load_critic(ck);

  Heatmap map;
  map.var_i = 0;
  map.var_j = 1;
  const auto& vi = ts.variables[0];
  const auto& vj = ts.variables[1];
  map.lo_i = vi.lo;
  map.lo_j = vj.lo;
  const int span_i = vi.hi - vi.lo + 1;
  const int span_j = vj.hi - vj.lo + 1;
  map.values.resize(span_i, span_j);

  Rng rng(seed);
  const Eigen::VectorXd x0 = env::sample_initial(task.env, rng);
  decomp::TimeAssignment base = midpoint_assignment(ts);

  Eigen::MatrixXd obs(span_j, encoder.dim());
  for (int r = 0; r < span_i; ++r) {
    decomp::TimeAssignment a = base;
    a[0] = vi.lo + r;
    for (int c = 0; c < span_j; ++c) {
      a[1] = vj.lo + c;
      mdp::AugmentedState s = initial_state_for(task, a, x0);
      encoder.encode_into(s, a, obs.row(c));
    }
    map.values.row(r) = critic.values(obs).transpose();
  }
  if (!map.values.allFinite()) throw Error("heatmap: non-finite critic value");
  return map;
}

void write_heatmap_csv(const Heatmap& map, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("heatmap: cannot write '" + path + "'");
  out << 't' << map.var_i << ",t" << map.var_j << ",value\n";
  for (Eigen::Index r = 0; r < map.values.rows(); ++r)
    for (Eigen::Index c = 0; c < map.values.cols(); ++c)
      out << map.lo_i + r << ',' << map.lo_j + c << ',' << csv_num(map.values(r, c)) << '\n';
}

CorrelationReport correlate(const Checkpoint& ck, const env::SceneSpec& scene, int n_samples,
                            std::uint64_t seed) {
  if (n_samples < 2) throw ConfigError("correlate: need at least two samples");
  if (ck.task != task_hash(scene))
    throw ConfigError("correlate: checkpoint was trained on a different task");
  mdp::Task task = mdp::make_task(scene);
  learn::ObservationEncoder encoder(task, ck.fields);
  if (encoder.dim() != ck.obs_dim)
    throw ConfigError("correlate: checkpoint observation width does not match the scene");
  learn::GaussianPolicy policy = load_policy(ck);
  learn::Critic critic = load_critic(ck);

  Rng rng(seed);
  std::vector<decomp::TimeAssignment> assignments;
  std::vector<Eigen::VectorXd> starts;
  Eigen::MatrixXd obs(n_samples, encoder.dim());
  for (int i = 0; i < n_samples; ++i) {
    Rng draw = rng.child(static_cast<std::uint64_t>(i));
    assignments.push_back(decomp::sample_uniform(task.taskset, task.env.horizon, draw));
    starts.push_back(env::sample_initial(task.env, draw));
    mdp::AugmentedState s = initial_state_for(task, assignments.back(), starts.back());
    encoder.encode_into(s, assignments.back(), obs.row(i));
  }
  const Eigen::VectorXd values = critic.values(obs);

  Eigen::VectorXd rho(n_samples);
  for (int i = 0; i < n_samples; ++i)
    rho[i] = rollout_robustness(task, policy, encoder, assignments[i], starts[i]);

  std::vector<int> order(n_samples);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });

  CorrelationReport report;
  report.critic.resize(n_samples);
  report.robustness.resize(n_samples);
  report.cum_success.resize(n_samples);
  int hits = 0;
  for (int k = 0; k < n_samples; ++k) {
    report.critic[k] = values[order[k]];
    report.robustness[k] = rho[order[k]];
    hits += rho[order[k]] >= 0.0 ? 1 : 0;
    report.cum_success[k] = static_cast<double>(hits) / (k + 1);
  }
  report.spearman = pearson(rank_with_ties(values), rank_with_ties(rho));
  return report;
}

void write_correlation_csv(const CorrelationReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("correlate: cannot write '" + path + "'");
  out << "critic,robustness,success,cum_success_rate\n";
  for (Eigen::Index i = 0; i < report.critic.size(); ++i)
    out << csv_num(report.critic[i]) << ',' << csv_num(report.robustness[i]) << ','
        << (report.robustness[i] >= 0.0 ? 1 : 0) << ',' << csv_num(report.cum_success[i]) << '\n';
}

}  // namespace tgpo::harness
