#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tgpo/harness/cem.hpp"
#include "tgpo/harness/checkpoint.hpp"
#include "tgpo/harness/config.hpp"
#include "tgpo/harness/evaluate.hpp"
#include "tgpo/harness/score.hpp"
#include "tgpo/harness/train.hpp"
#include "tgpo/mdp/episode.hpp"
#include "tgpo/stl/robustness.hpp"
#include "tgpo/util/error.hpp"

using namespace tgpo;
using namespace tgpo::harness;

namespace {

const char* kTwoGoalSceneText = R"json({
  "name": "two_goal",
  "env": {
    "dynamics": "linear",
    "horizon": 12,
    "init_box": {"lower": [-0.3, -0.3], "upper": [0.3, 0.3]},
    "workspace": {"lower": [-3, -3], "upper": [3, 3]}
  },
  "regions": [
    {"label": "A", "shape": "circle", "center": [1.0, 0.5], "radius": 0.6},
    {"label": "B", "shape": "circle", "center": [-0.5, 1.0], "radius": 0.6}
  ],
  "stl": "F[2,6](A) & F[1,5](B)"
})json";

const char* kOneGoalSceneText = R"json({
  "name": "one_goal",
  "env": {
    "dynamics": "linear",
    "horizon": 10,
    "init_box": {"lower": [-0.2, -0.2], "upper": [0.2, 0.2]},
    "workspace": {"lower": [-3, -3], "upper": [3, 3]}
  },
  "regions": [
    {"label": "A", "shape": "circle", "center": [0.8, 0.8], "radius": 0.7}
  ],
  "stl": "F[2,8](A)"
})json";

std::string temp_dir(const std::string& tag) {
  auto path = std::filesystem::temp_directory_path() / ("tgpo_harness_" + tag);
  std::filesystem::remove_all(path);
  std::filesystem::create_directories(path);
  return path.string();
}

std::string write_temp_file(const std::string& tag, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / tag;
  std::ofstream out(path);
  out << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig tiny_run(const std::string& scene_path, const std::string& out_dir) {
  RunConfig cfg = profile("desk");
  cfg.scene_path = scene_path;
  cfg.out_dir = out_dir;
  cfg.epochs = 2;
  cfg.n_envs = 8;
  cfg.hidden = {16, 16};
  cfg.sampler.n_steps = 10;
  cfg.sampler.n_warmup = 4;
  cfg.eval_n_init = 6;
  cfg.eval_n_candidates = 12;
  return cfg;
}

}  // namespace

TEST_CASE("profiles pin the two settings bundles") {
  RunConfig desk = profile("desk");
  CHECK(desk.hidden == std::vector<int>{64, 64});
  CHECK(desk.n_envs == 128);
  CHECK(desk.epochs == 300);

  RunConfig paper = profile("paper");
  CHECK(paper.hidden == std::vector<int>{512, 512, 512});
  CHECK(paper.n_envs == 512);
  CHECK(paper.epochs == 1000);
  CHECK(paper.sampler.n_steps == 500);
  CHECK(paper.sampler.n_warmup == 200);
  CHECK(paper.sampler.n_chains == 512);
  CHECK(paper.ppo.adam.lr == doctest::Approx(3e-4));
  CHECK(paper.reward.lambda_progress == doctest::Approx(20.0));

  CHECK_THROWS_AS(profile("laptop"), ConfigError);
}

TEST_CASE("switch strings toggle reward terms and state fields") {
  RunConfig cfg;
  apply_reward_terms(cfg, "stl-only");
  CHECK_FALSE(cfg.reward.use_dist);
  CHECK_FALSE(cfg.reward.use_progress);
  CHECK_FALSE(cfg.reward.use_success);
  CHECK_FALSE(cfg.reward.use_inv);
  CHECK(cfg.reward.use_terminal_robustness);

  apply_reward_terms(cfg, "dist,terminal");
  CHECK(cfg.reward.use_dist);
  CHECK_FALSE(cfg.reward.use_progress);
  CHECK(cfg.reward.use_terminal_robustness);

  apply_reward_terms(cfg, "full");
  CHECK(cfg.reward.use_dist);
  CHECK(cfg.reward.use_inv);
  CHECK_THROWS_AS(apply_reward_terms(cfg, "bonus"), ConfigError);

  apply_state_fields(cfg, "none");
  CHECK_FALSE(cfg.state_fields.time);
  CHECK_FALSE(cfg.state_fields.flags);
  apply_state_fields(cfg, "time");
  CHECK(cfg.state_fields.time);
  CHECK_FALSE(cfg.state_fields.flags);
  apply_state_fields(cfg, "all");
  CHECK(cfg.state_fields.flags);
  CHECK_THROWS_AS(apply_state_fields(cfg, "velocity"), ConfigError);

  apply_sampling_mix(cfg, "uniform");
  CHECK(cfg.sampler.ratio_uniform == doctest::Approx(1.0));
  CHECK(cfg.sampler.ratio_mcmc == doctest::Approx(0.0));
  apply_sampling_mix(cfg, "0.2, 0.3, 0.5");
  CHECK(cfg.sampler.ratio_elite == doctest::Approx(0.5));
  CHECK_THROWS_AS(apply_sampling_mix(cfg, "0.5,0.4"), ConfigError);
  CHECK_THROWS_AS(apply_sampling_mix(cfg, "0.5,0.4,0.3"), ConfigError);

  apply_inv_penalty_mode(cfg, "persistent");
  CHECK(cfg.reward.inv_mode == mdp::PenaltyMode::Persistent);
  apply_inv_penalty_mode(cfg, "once");
  CHECK(cfg.reward.inv_mode == mdp::PenaltyMode::Once);
  CHECK_THROWS_AS(apply_inv_penalty_mode(cfg, "twice"), ConfigError);
}

TEST_CASE("config file overrides previously applied flag values") {
  const std::string path = write_temp_file(
      "harness_cfg.json", R"({"epochs": 77, "lr": 0.001, "sampling_mix": "uniform"})");
  RunConfig cfg = profile("desk");
  cfg.epochs = 5;             // pretend a flag set this
  cfg.ppo.adam.lr = 0.01;     // and this
  apply_config_file(cfg, path);
  CHECK(cfg.epochs == 77);
  CHECK(cfg.ppo.adam.lr == doctest::Approx(0.001));
  CHECK(cfg.sampler.ratio_uniform == doctest::Approx(1.0));
  CHECK(cfg.n_envs == 128);  // untouched desk value survives

  const std::string bad = write_temp_file("harness_bad.json", R"({"epochss": 1})");
  CHECK_THROWS_AS(apply_config_file(cfg, bad), ConfigError);
  const std::string malformed = write_temp_file("harness_mal.json", "{epochs");
  CHECK_THROWS_AS(apply_config_file(cfg, malformed), ConfigError);
  CHECK_THROWS_AS(apply_config_file(cfg, "/no/such/file.json"), ConfigError);
}

TEST_CASE("fingerprints separate configs that train differently") {
  RunConfig a = profile("desk");
  RunConfig b = a;
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  b.ppo.clip_eps = 0.3;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
  b = a;
  b.state_fields.flags = false;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
  b = a;
  b.seed = 1;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
}

TEST_CASE("fnv1a matches the published test vectors") {
  CHECK(fnv1a("") == 14695981039346656037ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("task hash tracks formula and geometry") {
  env::SceneSpec s1 = env::SceneSpec::from_json_text(kTwoGoalSceneText, "two_goal");
  env::SceneSpec s2 = env::SceneSpec::from_json_text(kTwoGoalSceneText, "two_goal");
  CHECK(task_hash(s1) == task_hash(s2));

  std::string moved(kTwoGoalSceneText);
  moved.replace(moved.find("0.6"), 3, "0.7");
  env::SceneSpec s3 = env::SceneSpec::from_json_text(moved, "two_goal");
  CHECK(task_hash(s1) != task_hash(s3));

  std::string reworded(kTwoGoalSceneText);
  reworded.replace(reworded.find("F[2,6]"), 6, "F[2,7]");
  env::SceneSpec s4 = env::SceneSpec::from_json_text(reworded, "two_goal");
  CHECK(task_hash(s1) != task_hash(s4));
}

TEST_CASE("checkpoints round-trip byte-identically") {
  Rng rng(99);
  learn::GaussianPolicy policy(5, {8, 8}, 2, rng, -0.3);
  learn::Critic critic(5, {8, 8}, rng);

  Checkpoint ck;
  ck.task = 111;
  ck.config = 222;
  ck.seed = 333;
  ck.fields = {true, false};
  ck.hidden = {8, 8};
  ck.obs_dim = 5;
  ck.act_dim = 2;
  ck.policy_net = policy.net;
  ck.log_std = policy.log_std;
  ck.critic_net = critic.net;

  const std::string dir = temp_dir("ckpt");
  const std::string path = dir + "/ck.bin";
  ck.save(path);
  Checkpoint back = Checkpoint::load(path);
  CHECK(back.kind == CheckpointKind::PolicyCritic);
  CHECK(back.task == 111);
  CHECK(back.config == 222);
  CHECK(back.seed == 333);
  CHECK(back.fields.time);
  CHECK_FALSE(back.fields.flags);
  CHECK(back.hidden == std::vector<int>{8, 8});
  CHECK(back.obs_dim == 5);
  CHECK(back.act_dim == 2);
  REQUIRE(back.policy_net.has_value());
  REQUIRE(back.critic_net.has_value());
  for (int l = 0; l < policy.net.n_layers(); ++l) {
    CHECK(back.policy_net->W[l] == policy.net.W[l]);
    CHECK(back.policy_net->b[l] == policy.net.b[l]);
  }
  CHECK(back.log_std == policy.log_std);
  CHECK(back.critic_net->flatten() == critic.net.flatten());

  // saving the loaded copy reproduces the file byte for byte
  const std::string path2 = dir + "/ck2.bin";
  back.save(path2);
  CHECK(slurp(path) == slurp(path2));

  // rebuilt networks behave identically
  learn::GaussianPolicy policy2 = load_policy(back);
  learn::Critic critic2 = load_critic(back);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 5);
  CHECK((policy2.mean(x) - policy.mean(x)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((critic2.values(x) - critic.values(x)).cwiseAbs().maxCoeff() == 0.0);

  std::ofstream(path + ".junk") << "definitely not a checkpoint";
  CHECK_THROWS_AS(Checkpoint::load(path + ".junk"), ConfigError);
  std::string bytes = slurp(path);
  std::ofstream(path + ".cut", std::ios::binary) << bytes.substr(0, bytes.size() / 2);
  CHECK_THROWS_AS(Checkpoint::load(path + ".cut"), ConfigError);
  CHECK_THROWS_AS(Checkpoint::load(dir + "/missing.bin"), ConfigError);
}

TEST_CASE("training writes artifacts and is seed-deterministic") {
  const std::string scene_path = write_temp_file("harness_scene.json", kOneGoalSceneText);
  const std::string dir1 = temp_dir("train1");
  RunConfig cfg = tiny_run(scene_path, dir1);
  TrainResult r1 = train(cfg);
  CHECK(r1.epochs_run == 2);
  CHECK(std::filesystem::exists(r1.checkpoint_path));
  CHECK(std::filesystem::exists(r1.metrics_path));
  CHECK(std::filesystem::exists(r1.elites_path));

  std::ifstream metrics(r1.metrics_path);
  std::string line;
  std::getline(metrics, line);
  CHECK(line ==
        "epoch,mean_return,success_rate,mean_robustness,policy_loss,value_loss,entropy,"
        "approx_kl,clip_fraction");
  int expected_epoch = 0;
  while (std::getline(metrics, line)) {
    CHECK(line.substr(0, line.find(',')) == std::to_string(expected_epoch));
    ++expected_epoch;
  }
  CHECK(expected_epoch == 2);

  // same seed, fresh directory: identical checkpoint bytes and metrics
  const std::string dir2 = temp_dir("train2");
  cfg.out_dir = dir2;
  TrainResult r2 = train(cfg);
  CHECK(slurp(r1.checkpoint_path) == slurp(r2.checkpoint_path));
  CHECK(slurp(r1.metrics_path) == slurp(r2.metrics_path));
  CHECK(slurp(r1.elites_path) == slurp(r2.elites_path));

  cfg.seed = 17;
  const std::string dir3 = temp_dir("train3");
  cfg.out_dir = dir3;
  TrainResult r3 = train(cfg);
  CHECK(slurp(r1.checkpoint_path) != slurp(r3.checkpoint_path));

  Checkpoint ck = Checkpoint::load(r1.checkpoint_path);
  env::SceneSpec scene = env::SceneSpec::load(scene_path);
  CHECK(ck.task == task_hash(scene));
  CHECK(ck.seed == 0);
}

TEST_CASE("evaluation scores init states and refuses foreign checkpoints") {
  const std::string scene_path = write_temp_file("harness_eval_scene.json", kOneGoalSceneText);
  const std::string dir = temp_dir("eval");
  RunConfig cfg = tiny_run(scene_path, dir);
  TrainResult tr = train(cfg);
  Checkpoint ck = Checkpoint::load(tr.checkpoint_path);
  env::SceneSpec scene = env::SceneSpec::load(scene_path);

  Rng rng(5);
  EvalReport report = evaluate(ck, scene, cfg, rng);
  CHECK(report.success.size() == 6);
  CHECK(report.robustness.size() == 6);
  CHECK(report.chosen.size() == 6);
  int hits = 0;
  for (size_t i = 0; i < report.success.size(); ++i) {
    CHECK(report.success[i] == (report.robustness[i] >= 0.0 ? 1 : 0));
    hits += report.success[i];
    CHECK(report.chosen[i].size() == 1);
  }
  CHECK(report.success_rate == doctest::Approx(hits / 6.0).epsilon(1e-12));
  CHECK(report.wall_seconds > 0.0);

  // verdicts replay exactly: the chosen assignment's deterministic episode
  mdp::Task task = mdp::make_task(scene);
  learn::ObservationEncoder encoder(task, ck.fields);
  learn::GaussianPolicy policy = load_policy(ck);
  Rng rng2(5);
  EvalReport again = evaluate(ck, scene, cfg, rng2);
  for (size_t i = 0; i < report.success.size(); ++i)
    CHECK(report.robustness[i] == again.robustness[i]);

  const std::string csv = dir + "/eval.csv";
  write_eval_csv(report, csv);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "init,success,robustness,t0");

  Checkpoint foreign = ck;
  foreign.task ^= 0xdeadbeef;
  Rng rng3(5);
  CHECK_THROWS_AS(evaluate(foreign, scene, cfg, rng3), ConfigError);
}

TEST_CASE("episode traces survive the CSV round trip") {
  env::SceneSpec scene = env::SceneSpec::from_json_text(kOneGoalSceneText, "one_goal");
  mdp::Task task = mdp::make_task(scene);
  decomp::TimeAssignment a = {4};
  mdp::CompiledPlan plan(task, decomp::ground(task.taskset, a, task.env.horizon));
  mdp::RewardConfig rcfg;
  Rng rng(3);
  mdp::PolicyFn wander = [&](const mdp::AugmentedState&) {
    return Eigen::Vector2d(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  };
  Eigen::VectorXd x0 = Eigen::Vector2d(0.1, -0.1);
  mdp::EpisodeResult ep = mdp::run_episode(task, plan, rcfg, wander, x0);

  const std::string dir = temp_dir("traj");
  const std::string path = dir + "/sigma.csv";
  ep.sigma.save_csv(path);
  stl::Trajectory back = stl::Trajectory::load_csv(path, task.env.dt);
  REQUIRE(back.length() == ep.sigma.length());
  const double rho = stl::robustness(back, 0, task.formula, task.regions);
  CHECK(rho == doctest::Approx(ep.robustness).epsilon(1e-9));
}

TEST_CASE("heatmap spans both variable domains with finite cells") {
  const std::string scene_path = write_temp_file("harness_two_goal.json", kTwoGoalSceneText);
  const std::string dir = temp_dir("heatmap");
  RunConfig cfg = tiny_run(scene_path, dir);
  TrainResult tr = train(cfg);
  Checkpoint ck = Checkpoint::load(tr.checkpoint_path);
  env::SceneSpec scene = env::SceneSpec::load(scene_path);

  Heatmap map = critic_heatmap(ck, scene, 7);
  CHECK(map.values.rows() == 5);  // t0 in [2, 6]
  CHECK(map.values.cols() == 5);  // t1 in [1, 5]
  CHECK(map.lo_i == 2);
  CHECK(map.lo_j == 1);
  CHECK(map.values.allFinite());

  const std::string csv = dir + "/heatmap.csv";
  write_heatmap_csv(map, csv);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t0,t1,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 25);

  env::SceneSpec single = env::SceneSpec::from_json_text(kOneGoalSceneText, "one_goal");
  RunConfig single_cfg = tiny_run(write_temp_file("harness_single.json", kOneGoalSceneText),
                                  temp_dir("heatmap_single"));
  TrainResult str = train(single_cfg);
  Checkpoint sck = Checkpoint::load(str.checkpoint_path);
  CHECK_THROWS_AS(critic_heatmap(sck, single, 7), ConfigError);
}

TEST_CASE("correlation report is sorted with exact running success") {
  const std::string scene_path = write_temp_file("harness_corr.json", kTwoGoalSceneText);
  const std::string dir = temp_dir("corr");
  RunConfig cfg = tiny_run(scene_path, dir);
  TrainResult tr = train(cfg);
  Checkpoint ck = Checkpoint::load(tr.checkpoint_path);
  env::SceneSpec scene = env::SceneSpec::load(scene_path);

  CorrelationReport report = correlate(ck, scene, 64, 13);
  REQUIRE(report.critic.size() == 64);
  int hits = 0;
  for (int i = 0; i < 64; ++i) {
    if (i > 0) CHECK(report.critic[i] <= report.critic[i - 1]);
    hits += report.robustness[i] >= 0.0 ? 1 : 0;
    CHECK(report.cum_success[i] == doctest::Approx(static_cast<double>(hits) / (i + 1)));
  }
  CHECK(report.spearman >= -1.0);
  CHECK(report.spearman <= 1.0);

  const std::string csv = dir + "/correlation.csv";
  write_correlation_csv(report, csv);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "critic,robustness,success,cum_success_rate");
}

TEST_CASE("cross-entropy update matches the closed form") {
  Eigen::MatrixXd elites(3, 2);
  elites << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
  Eigen::VectorXd mean, std_dev;
  cem_update(elites, 1e-3, mean, std_dev);
  CHECK(mean[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(mean[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std_dev[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std_dev[1] == doctest::Approx(2.0).epsilon(1e-12));

  // identical elites: spread collapses to zero, then the floor applies
  Eigen::MatrixXd same(4, 3);
  same << 0.5, -1.0, 2.0, 0.5, -1.0, 2.0, 0.5, -1.0, 2.0, 0.5, -1.0, 2.0;
  cem_update(same, 1e-3, mean, std_dev);
  CHECK(mean[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mean[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std_dev.minCoeff() == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(std_dev.maxCoeff() == doctest::Approx(1e-3).epsilon(1e-12));

  Eigen::MatrixXd lone(1, 2);
  CHECK_THROWS_AS(cem_update(lone, 1e-3, mean, std_dev), ConfigError);
}

TEST_CASE("cem training produces an evaluable checkpoint") {
  const std::string scene_path = write_temp_file("harness_cem.json", kOneGoalSceneText);
  const std::string dir = temp_dir("cem");
  RunConfig cfg = tiny_run(scene_path, dir);
  cfg.cem_population = 16;
  cfg.cem_elites = 4;
  cfg.epochs = 3;
  CemResult res = cem_train(cfg);
  CHECK(res.iterations == 3);
  CHECK(std::filesystem::exists(res.checkpoint_path));
  CHECK(std::filesystem::exists(res.metrics_path));

  Checkpoint ck = Checkpoint::load(res.checkpoint_path);
  CHECK(ck.kind == CheckpointKind::Cem);
  CHECK_FALSE(ck.critic_net.has_value());
  CHECK_THROWS_AS(load_critic(ck), ConfigError);

  env::SceneSpec scene = env::SceneSpec::load(scene_path);
  Rng rng(21);
  EvalReport report = evaluate(ck, scene, cfg, rng);
  CHECK(report.success.size() == 6);
  for (const auto& a : report.chosen) CHECK(a.size() == 1);

  // same seed reruns bit-identically
  const std::string dir2 = temp_dir("cem2");
  cfg.out_dir = dir2;
  CemResult res2 = cem_train(cfg);
  CHECK(slurp(res.checkpoint_path) == slurp(res2.checkpoint_path));
  CHECK(slurp(res.metrics_path) == slurp(res2.metrics_path));
}

TEST_CASE("run config validation rejects unusable settings") {
  RunConfig cfg = profile("desk");
  cfg.n_envs = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = profile("desk");
  cfg.hidden = {};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = profile("desk");
  cfg.cem_elites = cfg.cem_population + 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = profile("desk");
  cfg.sampler.ratio_uniform = 0.9;  // ratios no longer sum to one
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = profile("desk");
  CHECK_NOTHROW(cfg.validate());

  RunConfig no_scene = tiny_run("", temp_dir("noscene"));
  no_scene.scene_path.clear();
  CHECK_THROWS_AS(train(no_scene), ConfigError);
}
