#include "tgpo/harness/train.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tgpo/ground/elite.hpp"
#include "tgpo/ground/sampler.hpp"
#include "tgpo/harness/score.hpp"
#include "tgpo/learn/rollout.hpp"
#include "tgpo/util/error.hpp"

namespace tgpo::harness {
namespace {

// rng stream salts, one namespace per consumer
constexpr std::uint64_t kSaltInit = 0x1;
constexpr std::uint64_t kSaltCompose = 0x100000;
constexpr std::uint64_t kSaltRollout = 0x200000;
constexpr std::uint64_t kSaltUpdate = 0x300000;

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void dump_batch(const learn::PpoBatch& batch, const std::string& path) {
  std::ofstream out(path);
  if (!out) return;
  out << "row,logp_old,advantage,return,obs...,actions...\n";
  for (int i = 0; i < batch.size(); ++i) {
    out << i << ',' << csv_num(batch.logp_old[i]) << ',' << csv_num(batch.advantages[i]) << ','
        << csv_num(batch.returns[i]);
    for (Eigen::Index j = 0; j < batch.obs.cols(); ++j) out << ',' << csv_num(batch.obs(i, j));
    for (Eigen::Index j = 0; j < batch.actions.cols(); ++j)
      out << ',' << csv_num(batch.actions(i, j));
    out << '\n';
  }
}

void write_elites(const ground::EliteBuffer& elites, const std::string& path, int n_vars) {
  std::ofstream out(path);
  if (!out) throw ConfigError("train: cannot write '" + path + "'");
  for (int v = 0; v < n_vars; ++v) out << 't' << v << ',';
  out << "score\n";
  for (const auto& e : elites.entries()) {
    for (int t : e.assignment) out << t << ',';
    out << csv_num(e.score) << '\n';
  }
}

}  // namespace

TrainResult train(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.scene_path.empty()) throw ConfigError("train: no scene given");
  env::SceneSpec scene = env::SceneSpec::load(cfg.scene_path);
  mdp::Task task = mdp::make_task(scene);
  const int horizon = task.env.horizon;

  std::filesystem::create_directories(cfg.out_dir);
  const std::string checkpoint_path = cfg.out_dir + "/checkpoint.bin";
  const std::string metrics_path = cfg.out_dir + "/metrics.csv";
  const std::string elites_path = cfg.out_dir + "/elites.csv";

  learn::ObservationEncoder encoder(task, cfg.state_fields);
  Rng root(cfg.seed);
  Rng init_rng = root.child(kSaltInit);
  learn::GaussianPolicy policy(encoder.dim(), cfg.hidden, task.env.control_dim, init_rng,
                               cfg.log_std_init);
  learn::Critic critic(encoder.dim(), cfg.hidden, init_rng);
  learn::MlpAdam policy_opt(policy.net, cfg.ppo.adam, policy.act_dim());
  learn::MlpAdam critic_opt(critic.net, cfg.ppo.adam);

  ground::EliteBuffer elites;
  const Eigen::VectorXd x0_ref = init_box_midpoint(task.env);
  ground::BatchScoreFn score = critic_score(task, critic, encoder, x0_ref);

  std::ofstream metrics(metrics_path, std::ios::trunc);
  if (!metrics) throw ConfigError("train: cannot write '" + metrics_path + "'");
  metrics << "epoch,mean_return,success_rate,mean_robustness,policy_loss,value_loss,entropy,"
             "approx_kl,clip_fraction\n";
  metrics.flush();

  TrainResult result;
  result.checkpoint_path = checkpoint_path;
  result.metrics_path = metrics_path;
  result.elites_path = elites_path;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng compose_rng = root.child(kSaltCompose + static_cast<std::uint64_t>(epoch));
    std::vector<decomp::TimeAssignment> assignments = ground::compose_batch(
        task.taskset, horizon, cfg.n_envs, &score, elites, cfg.sampler, compose_rng);

    Rng rollout_rng = root.child(kSaltRollout + static_cast<std::uint64_t>(epoch));
    learn::RolloutResult rollout =
        learn::collect_rollouts(task, assignments, policy, critic, encoder, cfg.reward, cfg.ppo,
                                cfg.n_envs, rollout_rng);

    Rng update_rng = root.child(kSaltUpdate + static_cast<std::uint64_t>(epoch));
    learn::PpoStats stats;
    try {
      stats = learn::ppo_update(policy, critic, policy_opt, critic_opt, rollout.batch, cfg.ppo,
                                update_rng);
    } catch (const Error&) {
      const std::string dump = cfg.out_dir + "/diverged_batch.csv";
      dump_batch(rollout.batch, dump);
      throw Error("train: non-finite update at epoch " + std::to_string(epoch) +
                  ", offending batch dumped to " + dump);
    }

    std::vector<ground::EliteBuffer::Entry> batch_entries;
    batch_entries.reserve(rollout.episodes.size());
    for (const auto& ep : rollout.episodes)
      batch_entries.push_back({assignments[ep.assignment_index], ep.robustness});
    elites.add_batch(batch_entries);

    metrics << epoch << ',' << csv_num(rollout.mean_return) << ',' << csv_num(rollout.success_rate)
            << ',' << csv_num(rollout.mean_robustness) << ',' << csv_num(stats.policy_loss) << ','
            << csv_num(stats.value_loss) << ',' << csv_num(stats.entropy) << ','
            << csv_num(stats.approx_kl) << ',' << csv_num(stats.clip_fraction) << '\n';
    metrics.flush();

    result.epochs_run = epoch + 1;
    result.final_return = rollout.mean_return;
    result.final_success = rollout.success_rate;
    result.final_robustness = rollout.mean_robustness;
  }

  Checkpoint ck;
  ck.kind = CheckpointKind::PolicyCritic;
  ck.task = task_hash(scene);
  ck.config = fnv1a(config_fingerprint(cfg));
  ck.seed = cfg.seed;
  ck.fields = cfg.state_fields;
  ck.hidden = cfg.hidden;
  ck.obs_dim = encoder.dim();
  ck.act_dim = task.env.control_dim;
  ck.policy_net = policy.net;
  ck.log_std = policy.log_std;
  ck.critic_net = critic.net;
  ck.save(checkpoint_path);
  write_elites(elites, elites_path, task.taskset.n_variables());
  return result;
}

}  // namespace tgpo::harness
