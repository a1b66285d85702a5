#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tgpo/decomp/decompose.hpp"
#include "tgpo/harness/cem.hpp"
#include "tgpo/harness/evaluate.hpp"
#include "tgpo/harness/train.hpp"
#include "tgpo/stl/robustness.hpp"
#include "tgpo/util/error.hpp"

namespace {

using tgpo::harness::RunConfig;

struct CommonFlags {
  std::string scene;
  std::string config_file;
  std::string profile = "paper";
  std::string out;
  std::string reward_terms;
  std::string state_fields;
  std::string sampling_mix;
  std::string inv_penalty_mode;
  std::uint64_t seed = 0;
  int epochs = -1;
  int n_envs = -1;
  bool single_thread = false;
};

// Registers the shared training/evaluation switches on a subcommand and
// returns the option handles needed to tell "user set it" from "default".
struct CommonOpts {
  CLI::Option* scene = nullptr;
  CLI::Option* config_file = nullptr;
  CLI::Option* profile = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* reward_terms = nullptr;
  CLI::Option* state_fields = nullptr;
  CLI::Option* sampling_mix = nullptr;
  CLI::Option* inv_penalty_mode = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* epochs = nullptr;
  CLI::Option* n_envs = nullptr;
  CLI::Option* single_thread = nullptr;
};

CommonOpts add_common(CLI::App* cmd, CommonFlags& f) {
  CommonOpts o;
  o.scene = cmd->add_option("--scene", f.scene, "scene JSON file");
  o.config_file = cmd->add_option("--config", f.config_file, "JSON config file (overrides flags)");
  o.profile = cmd->add_option("--profile", f.profile, "settings bundle: desk or paper");
  o.out = cmd->add_option("--out", f.out, "artifact directory (default $TGPO_OUT_DIR or .)");
  o.reward_terms = cmd->add_option("--reward-terms", f.reward_terms,
                                   "full, stl-only, or list of dist,progress,success,inv,terminal");
  o.state_fields =
      cmd->add_option("--state-fields", f.state_fields, "all, none, or list of time,flags");
  o.sampling_mix = cmd->add_option("--sampling-mix", f.sampling_mix,
                                   "hybrid, uniform, or ratios uniform,mcmc,elite");
  o.inv_penalty_mode =
      cmd->add_option("--inv-penalty-mode", f.inv_penalty_mode, "once or persistent");
  o.seed = cmd->add_option("--seed", f.seed, "run seed");
  o.epochs = cmd->add_option("--epochs", f.epochs, "training epochs / iterations");
  o.n_envs = cmd->add_option("--n-envs", f.n_envs, "parallel episodes per epoch");
  o.single_thread = cmd->add_flag("--single-thread", f.single_thread,
                                  "force the sequential path (runs are deterministic either way)");
  return o;
}

// defaults (profile) < flags < config file
RunConfig assemble(const CommonFlags& f, const CommonOpts& o) {
  RunConfig cfg = tgpo::harness::profile(f.profile);
  if (const char* root = std::getenv("TGPO_OUT_DIR")) cfg.out_dir = root;
  if (o.scene->count()) cfg.scene_path = f.scene;
  if (o.seed->count()) cfg.seed = f.seed;
  if (o.epochs->count()) cfg.epochs = f.epochs;
  if (o.n_envs->count()) cfg.n_envs = f.n_envs;
  if (o.out->count()) cfg.out_dir = f.out;
  if (o.reward_terms->count()) tgpo::harness::apply_reward_terms(cfg, f.reward_terms);
  if (o.state_fields->count()) tgpo::harness::apply_state_fields(cfg, f.state_fields);
  if (o.sampling_mix->count()) tgpo::harness::apply_sampling_mix(cfg, f.sampling_mix);
  if (o.inv_penalty_mode->count()) tgpo::harness::apply_inv_penalty_mode(cfg, f.inv_penalty_mode);
  if (o.single_thread->count()) cfg.single_thread = f.single_thread;
  if (o.config_file->count()) tgpo::harness::apply_config_file(cfg, f.config_file);
  return cfg;
}

int run_train(const RunConfig& cfg) {
  tgpo::harness::TrainResult res = tgpo::harness::train(cfg);
  std::printf("trained %d epochs: return %.4f, success %.4f, robustness %.4f\n", res.epochs_run,
              res.final_return, res.final_success, res.final_robustness);
  std::printf("checkpoint: %s\nmetrics: %s\nelites: %s\n", res.checkpoint_path.c_str(),
              res.metrics_path.c_str(), res.elites_path.c_str());
  return 0;
}

int run_eval(const RunConfig& cfg, const std::string& checkpoint_path) {
  tgpo::env::SceneSpec scene = tgpo::env::SceneSpec::load(cfg.scene_path);
  tgpo::harness::Checkpoint ck = tgpo::harness::Checkpoint::load(checkpoint_path);
  tgpo::Rng rng(cfg.seed);
  tgpo::harness::EvalReport report = tgpo::harness::evaluate(ck, scene, cfg, rng);
  const std::string out_csv = cfg.out_dir + "/eval.csv";
  tgpo::harness::write_eval_csv(report, out_csv);
  std::printf("success rate %.4f over %d start states (%.1fs)\n", report.success_rate,
              static_cast<int>(report.success.size()), report.wall_seconds);
  std::printf("per-state results: %s\n", out_csv.c_str());
  return 0;
}

int run_decompose(const std::string& scene_path, const std::string& out_dir,
                  const CLI::Option* out_given) {
  tgpo::env::SceneSpec scene = tgpo::env::SceneSpec::load(scene_path);
  tgpo::decomp::TaskSet ts = tgpo::decomp::decompose(scene.formula);
  std::printf("%-10s %-6s %-8s %-12s %s\n", "kind", "label", "start", "end", "domain");
  for (const auto& g : ts.subgoals)
    std::printf("%-10s %-6s %-8s %-12s %s\n",
                g.kind == tgpo::decomp::SubgoalKind::Reach ? "reach" : "stay", g.label.c_str(),
                g.start.str().c_str(), g.end.str().c_str(), "");
  for (const auto& c : ts.constraints)
    std::printf("%-10s %-6s %-8s %-12s %s\n", "avoid", c.label.c_str(), c.start.str().c_str(),
                c.end.str().c_str(), "");
  for (const auto& v : ts.variables) {
    const std::string dom = "[" + std::to_string(v.lo) + ", " + std::to_string(v.hi) + "]";
    std::printf("%-10s t%-5d %-8s %-12s %s\n", "variable", v.id, "", "", dom.c_str());
  }
  if (out_given->count()) {
    const std::string path = out_dir + "/decomposition.csv";
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw tgpo::ConfigError("decompose: cannot write '" + path + "'");
    std::fprintf(f, "kind,label,start,end,lo,hi\n");
    for (const auto& g : ts.subgoals)
      std::fprintf(f, "%s,%s,%s,%s,,\n",
                   g.kind == tgpo::decomp::SubgoalKind::Reach ? "reach" : "stay", g.label.c_str(),
                   g.start.str().c_str(), g.end.str().c_str());
    for (const auto& c : ts.constraints)
      std::fprintf(f, "avoid,%s,%s,%s,,\n", c.label.c_str(), c.start.str().c_str(),
                   c.end.str().c_str());
    for (const auto& v : ts.variables)
      std::fprintf(f, "variable,t%d,,,%d,%d\n", v.id, v.lo, v.hi);
    std::fclose(f);
    std::printf("written: %s\n", path.c_str());
  }
  return 0;
}

int run_monitor(const std::string& scene_path, const std::string& traj_path) {
  tgpo::env::SceneSpec scene = tgpo::env::SceneSpec::load(scene_path);
  tgpo::stl::Trajectory traj = tgpo::stl::Trajectory::load_csv(traj_path, scene.env.dt);
  if (traj.length() == 0) throw tgpo::ConfigError("monitor: empty trajectory");
  if (traj.state_dim() != scene.env.state_dim)
    throw tgpo::ConfigError("monitor: trajectory has " + std::to_string(traj.state_dim()) +
                            " state dims, scene expects " +
                            std::to_string(scene.env.state_dim));
  const double rho = tgpo::stl::robustness(traj, 0, scene.formula, scene.regions);
  std::printf("robustness %.9f\n%s\n", rho, rho >= 0.0 ? "SAT" : "UNSAT");
  return 0;
}

int run_heatmap(const RunConfig& cfg, const std::string& checkpoint_path) {
  tgpo::env::SceneSpec scene = tgpo::env::SceneSpec::load(cfg.scene_path);
  tgpo::harness::Checkpoint ck = tgpo::harness::Checkpoint::load(checkpoint_path);
  tgpo::harness::Heatmap map = tgpo::harness::critic_heatmap(ck, scene, cfg.seed);
  const std::string path = cfg.out_dir + "/heatmap.csv";
  tgpo::harness::write_heatmap_csv(map, path);
  std::printf("%ldx%ld grid over t%d, t%d: %s\n", static_cast<long>(map.values.rows()),
              static_cast<long>(map.values.cols()), map.var_i, map.var_j, path.c_str());
  return 0;
}

int run_correlate(const RunConfig& cfg, const std::string& checkpoint_path, int n_samples) {
  tgpo::env::SceneSpec scene = tgpo::env::SceneSpec::load(cfg.scene_path);
  tgpo::harness::Checkpoint ck = tgpo::harness::Checkpoint::load(checkpoint_path);
  tgpo::harness::CorrelationReport report =
      tgpo::harness::correlate(ck, scene, n_samples, cfg.seed);
  const std::string path = cfg.out_dir + "/correlation.csv";
  tgpo::harness::write_correlation_csv(report, path);
  std::printf("spearman %.4f over %d samples: %s\n", report.spearman, n_samples, path.c_str());
  return 0;
}

int run_cem(const RunConfig& cfg) {
  tgpo::harness::CemResult res = tgpo::harness::cem_train(cfg);
  std::printf("cem ran %d iterations: best %.4f, elite mean %.4f\n", res.iterations,
              res.best_fitness, res.final_elite_mean);
  std::printf("checkpoint: %s\nmetrics: %s\n", res.checkpoint_path.c_str(),
              res.metrics_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal-task policy toolkit"};
  app.require_subcommand(1);

  CommonFlags tf;
  CLI::App* train_cmd = app.add_subcommand("train", "train a policy on a scene");
  CommonOpts to = add_common(train_cmd, tf);

  CommonFlags ef;
  std::string eval_checkpoint;
  int eval_n_init = 0, eval_n_candidates = 0;
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a trained checkpoint");
  CommonOpts eo = add_common(eval_cmd, ef);
  eval_cmd->add_option("--checkpoint", eval_checkpoint, "checkpoint file")->required();
  eval_cmd->add_option("--n-init", eval_n_init, "initial states to evaluate");
  eval_cmd->add_option("--n-candidates", eval_n_candidates, "time assignments per state");

  std::string dec_scene, dec_out;
  CLI::App* dec_cmd = app.add_subcommand("decompose", "print a scene's timed-task breakdown");
  dec_cmd->add_option("--scene", dec_scene, "scene JSON file")->required();
  CLI::Option* dec_out_opt = dec_cmd->add_option("--out", dec_out, "directory for the CSV form");

  std::string mon_scene, mon_traj;
  CLI::App* mon_cmd = app.add_subcommand("monitor", "score a trajectory against a scene formula");
  mon_cmd->add_option("--scene", mon_scene, "scene JSON file")->required();
  mon_cmd->add_option("--trajectory", mon_traj, "trajectory CSV (header t,x0,x1,...)")->required();

  CommonFlags hf;
  std::string heat_checkpoint;
  CLI::App* heat_cmd = app.add_subcommand("heatmap", "critic value over the first two variables");
  CommonOpts ho = add_common(heat_cmd, hf);
  heat_cmd->add_option("--checkpoint", heat_checkpoint, "checkpoint file")->required();

  CommonFlags cf;
  std::string corr_checkpoint;
  int corr_samples = 4096;
  CLI::App* corr_cmd =
      app.add_subcommand("correlate", "critic value vs episode robustness on random plans");
  CommonOpts co = add_common(corr_cmd, cf);
  corr_cmd->add_option("--checkpoint", corr_checkpoint, "checkpoint file")->required();
  corr_cmd->add_option("--n-samples", corr_samples, "number of random plans");

  CommonFlags mf;
  CLI::App* cem_cmd = app.add_subcommand("cem", "derivative-free baseline on a scene");
  CommonOpts mo = add_common(cem_cmd, mf);

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) return run_train(assemble(tf, to));
    if (eval_cmd->parsed()) {
      RunConfig cfg = assemble(ef, eo);
      if (eval_n_init > 0) cfg.eval_n_init = eval_n_init;
      if (eval_n_candidates > 0) cfg.eval_n_candidates = eval_n_candidates;
      return run_eval(cfg, eval_checkpoint);
    }
    if (dec_cmd->parsed()) return run_decompose(dec_scene, dec_out, dec_out_opt);
    if (mon_cmd->parsed()) return run_monitor(mon_scene, mon_traj);
    if (heat_cmd->parsed()) return run_heatmap(assemble(hf, ho), heat_checkpoint);
    if (corr_cmd->parsed()) return run_correlate(assemble(cf, co), corr_checkpoint, corr_samples);
    if (cem_cmd->parsed()) return run_cem(assemble(mf, mo));
  } catch (const tgpo::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
