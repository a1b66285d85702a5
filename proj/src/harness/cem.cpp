#include "tgpo/harness/cem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>

#include "tgpo/env/dynamics.hpp"
#include "tgpo/harness/evaluate.hpp"
#include "tgpo/util/error.hpp"

namespace tgpo::harness {
namespace {

constexpr std::uint64_t kSaltInit = 0x1;
constexpr std::uint64_t kSaltNoise = 0x400000;
constexpr std::uint64_t kSaltStart = 0x500000;

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

decomp::TimeAssignment midpoints(const decomp::TaskSet& ts) {
  decomp::TimeAssignment a;
  for (const auto& v : ts.variables) a.push_back(v.lo + (v.hi - v.lo) / 2);
  return a;
}

}  // namespace

void cem_update(const Eigen::MatrixXd& elites, double std_floor, Eigen::VectorXd& mean,
                Eigen::VectorXd& std) {
  const Eigen::Index k = elites.rows();
  if (k < 2) throw ConfigError("cem: need at least two elites");
  mean = elites.colwise().mean().transpose();
  Eigen::ArrayXd var = (elites.rowwise() - mean.transpose()).array().square().colwise().sum() /
                       static_cast<double>(k - 1);
  std = var.sqrt().max(std_floor).matrix();
}

CemResult cem_train(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.scene_path.empty()) throw ConfigError("cem: no scene given");
  env::SceneSpec scene = env::SceneSpec::load(cfg.scene_path);
  mdp::Task task = mdp::make_task(scene);

  std::filesystem::create_directories(cfg.out_dir);
  const std::string checkpoint_path = cfg.out_dir + "/cem_checkpoint.bin";
  const std::string metrics_path = cfg.out_dir + "/cem_metrics.csv";

  // No progress bookkeeping: the controller sees position and elapsed time.
  learn::StateFields fields{true, false};
  learn::ObservationEncoder encoder(task, fields);
  const decomp::TimeAssignment encode_assignment = midpoints(task.taskset);

  Rng root(cfg.seed);
  Rng init_rng = root.child(kSaltInit);
  learn::Mlp net(encoder.dim(), cfg.hidden, task.env.control_dim);
  net.init_orthogonal(init_rng, std::sqrt(2.0), 0.01);

  Eigen::VectorXd mean = net.flatten();
  Eigen::VectorXd std_dev = Eigen::VectorXd::Constant(mean.size(), cfg.cem_init_std);

  std::ofstream metrics(metrics_path, std::ios::trunc);
  if (!metrics) throw ConfigError("cem: cannot write '" + metrics_path + "'");
  metrics << "iter,best_fitness,mean_fitness,elite_mean_fitness,mean_std\n";
  metrics.flush();

  CemResult result;
  result.checkpoint_path = checkpoint_path;
  result.metrics_path = metrics_path;
  result.best_fitness = -std::numeric_limits<double>::infinity();

  const int pop = cfg.cem_population;
  const int k = cfg.cem_elites;
  learn::Mlp scratch = net;
  Eigen::MatrixXd thetas(pop, mean.size());
  Eigen::VectorXd fitness(pop);

  for (int iter = 0; iter < cfg.epochs; ++iter) {
    Rng noise = root.child(kSaltNoise + static_cast<std::uint64_t>(iter));
    for (int i = 0; i < pop; ++i)
      for (Eigen::Index d = 0; d < mean.size(); ++d)
        thetas(i, d) = mean[d] + std_dev[d] * noise.normal();

    Rng start_rng = root.child(kSaltStart + static_cast<std::uint64_t>(iter));
    const Eigen::VectorXd x0 = env::sample_initial(task.env, start_rng);
    for (int i = 0; i < pop; ++i) {
      scratch.unflatten(thetas.row(i).transpose());
      fitness[i] = raw_rollout_robustness(task, scratch, encoder, encode_assignment, x0);
    }

    std::vector<int> order(pop);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fitness[a] > fitness[b]; });
    Eigen::MatrixXd elite_rows(k, mean.size());
    double elite_sum = 0.0;
    for (int e = 0; e < k; ++e) {
      elite_rows.row(e) = thetas.row(order[e]);
      elite_sum += fitness[order[e]];
    }
    cem_update(elite_rows, cfg.cem_std_floor, mean, std_dev);

    result.best_fitness = std::max(result.best_fitness, fitness[order[0]]);
    result.final_elite_mean = elite_sum / k;
    result.iterations = iter + 1;
    metrics << iter << ',' << csv_num(fitness[order[0]]) << ',' << csv_num(fitness.mean()) << ','
            << csv_num(result.final_elite_mean) << ',' << csv_num(std_dev.mean()) << '\n';
    metrics.flush();
  }

  net.unflatten(mean);
  Checkpoint ck;
  ck.kind = CheckpointKind::Cem;
  ck.task = task_hash(scene);
  ck.config = fnv1a(config_fingerprint(cfg));
  ck.seed = cfg.seed;
  ck.fields = fields;
  ck.hidden = cfg.hidden;
  ck.obs_dim = encoder.dim();
  ck.act_dim = task.env.control_dim;
  ck.policy_net = net;
  ck.log_std = Eigen::VectorXd::Zero(task.env.control_dim);
  ck.save(checkpoint_path);
  return result;
}

}  // namespace tgpo::harness
