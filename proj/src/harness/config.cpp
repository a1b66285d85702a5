#include "tgpo/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "tgpo/util/error.hpp"

namespace tgpo::harness {
namespace {

using nlohmann::json;

std::vector<std::string> split_commas(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    parts.push_back(item.substr(a, b - a + 1));
  }
  return parts;
}

void append_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
  out += ';';
}

}  // namespace

void RunConfig::validate() const {
  if (epochs < 0) throw ConfigError("config: epochs must be >= 0");
  if (n_envs <= 0) throw ConfigError("config: n_envs must be > 0");
  if (hidden.empty()) throw ConfigError("config: at least one hidden layer");
  for (int h : hidden)
    if (h <= 0) throw ConfigError("config: hidden sizes must be > 0");
  if (eval_n_init <= 0 || eval_n_candidates <= 0)
    throw ConfigError("config: eval counts must be > 0");
  if (cem_population <= 1 || cem_elites <= 1 || cem_elites > cem_population)
    throw ConfigError("config: need cem_population > 1 and 1 < cem_elites <= cem_population");
  if (cem_init_std <= 0.0 || cem_std_floor < 0.0)
    throw ConfigError("config: cem std settings must be positive");
  sampler.validate();
}

RunConfig profile(const std::string& name) {
  RunConfig cfg;
  if (name == "paper") return cfg;
  if (name == "desk") {
    cfg.hidden = {64, 64};
    cfg.n_envs = 128;
    cfg.epochs = 300;
    cfg.sampler.n_steps = 100;
    cfg.sampler.n_warmup = 40;
    return cfg;
  }
  throw ConfigError("config: unknown profile '" + name + "'");
}

void apply_reward_terms(RunConfig& cfg, const std::string& spec) {
  auto& r = cfg.reward;
  if (spec == "full") {
    r.use_dist = r.use_progress = r.use_success = r.use_inv = true;
    r.use_terminal_robustness = true;
    return;
  }
  if (spec == "stl-only") {
    r.use_dist = r.use_progress = r.use_success = r.use_inv = false;
    r.use_terminal_robustness = true;
    return;
  }
  r.use_dist = r.use_progress = r.use_success = r.use_inv = false;
  r.use_terminal_robustness = false;
  for (const auto& term : split_commas(spec)) {
    if (term == "dist")
      r.use_dist = true;
    else if (term == "progress")
      r.use_progress = true;
    else if (term == "success")
      r.use_success = true;
    else if (term == "inv")
      r.use_inv = true;
    else if (term == "terminal")
      r.use_terminal_robustness = true;
    else
      throw ConfigError("config: unknown reward term '" + term + "'");
  }
}

void apply_state_fields(RunConfig& cfg, const std::string& spec) {
  if (spec == "all") {
    cfg.state_fields = {true, true};
    return;
  }
  if (spec == "none") {
    cfg.state_fields = {false, false};
    return;
  }
  cfg.state_fields = {false, false};
  for (const auto& field : split_commas(spec)) {
    if (field == "time")
      cfg.state_fields.time = true;
    else if (field == "flags")
      cfg.state_fields.flags = true;
    else
      throw ConfigError("config: unknown state field '" + field + "'");
  }
}

void apply_sampling_mix(RunConfig& cfg, const std::string& spec) {
  auto& s = cfg.sampler;
  if (spec == "hybrid") {
    s.ratio_uniform = 0.5;
    s.ratio_mcmc = 0.4;
    s.ratio_elite = 0.1;
    return;
  }
  if (spec == "uniform") {
    s.ratio_uniform = 1.0;
    s.ratio_mcmc = 0.0;
    s.ratio_elite = 0.0;
    return;
  }
  auto parts = split_commas(spec);
  if (parts.size() != 3)
    throw ConfigError("config: sampling mix needs three ratios 'uniform,mcmc,elite'");
  try {
    s.ratio_uniform = std::stod(parts[0]);
    s.ratio_mcmc = std::stod(parts[1]);
    s.ratio_elite = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw ConfigError("config: sampling mix ratios must be numbers");
  }
  s.validate();
}

void apply_inv_penalty_mode(RunConfig& cfg, const std::string& spec) {
  if (spec == "once")
    cfg.reward.inv_mode = mdp::PenaltyMode::Once;
  else if (spec == "persistent")
    cfg.reward.inv_mode = mdp::PenaltyMode::Persistent;
  else
    throw ConfigError("config: invariant penalty mode must be 'once' or 'persistent'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: bad JSON in '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  static const std::set<std::string> known = {
      "scene",          "seed",          "epochs",        "n_envs",
      "hidden",         "log_std_init",  "lr",            "weight_decay",
      "gamma",          "gae_lambda",    "clip_eps",      "ppo_epochs",
      "minibatches",    "entropy_coef",  "value_coef",    "max_grad_norm",
      "lambda_dist",    "lambda_progress", "lambda_success", "lambda_inv",
      "lambda_rho",     "reward_terms",  "state_fields",  "sampling_mix",
      "inv_penalty_mode", "mh_steps",    "mh_warmup",     "mh_chains",
      "eval_n_init",    "eval_n_candidates", "cem_population", "cem_elites",
      "cem_init_std",   "cem_std_floor", "out",           "single_thread"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");

  try {
    if (j.contains("scene")) cfg.scene_path = j.at("scene").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("epochs")) cfg.epochs = j.at("epochs").get<int>();
    if (j.contains("n_envs")) cfg.n_envs = j.at("n_envs").get<int>();
    if (j.contains("hidden")) cfg.hidden = j.at("hidden").get<std::vector<int>>();
    if (j.contains("log_std_init")) cfg.log_std_init = j.at("log_std_init").get<double>();
    if (j.contains("lr")) cfg.ppo.adam.lr = j.at("lr").get<double>();
    if (j.contains("weight_decay")) cfg.ppo.adam.weight_decay = j.at("weight_decay").get<double>();
    if (j.contains("gamma")) cfg.ppo.gamma = j.at("gamma").get<double>();
    if (j.contains("gae_lambda")) cfg.ppo.gae_lambda = j.at("gae_lambda").get<double>();
    if (j.contains("clip_eps")) cfg.ppo.clip_eps = j.at("clip_eps").get<double>();
    if (j.contains("ppo_epochs")) cfg.ppo.epochs = j.at("ppo_epochs").get<int>();
    if (j.contains("minibatches")) cfg.ppo.minibatches = j.at("minibatches").get<int>();
    if (j.contains("entropy_coef")) cfg.ppo.entropy_coef = j.at("entropy_coef").get<double>();
    if (j.contains("value_coef")) cfg.ppo.value_coef = j.at("value_coef").get<double>();
    if (j.contains("max_grad_norm")) cfg.ppo.max_grad_norm = j.at("max_grad_norm").get<double>();
    if (j.contains("lambda_dist")) cfg.reward.lambda_dist = j.at("lambda_dist").get<double>();
    if (j.contains("lambda_progress"))
      cfg.reward.lambda_progress = j.at("lambda_progress").get<double>();
    if (j.contains("lambda_success"))
      cfg.reward.lambda_success = j.at("lambda_success").get<double>();
    if (j.contains("lambda_inv")) cfg.reward.lambda_inv = j.at("lambda_inv").get<double>();
    if (j.contains("lambda_rho")) cfg.reward.lambda_rho = j.at("lambda_rho").get<double>();
    if (j.contains("reward_terms"))
      apply_reward_terms(cfg, j.at("reward_terms").get<std::string>());
    if (j.contains("state_fields"))
      apply_state_fields(cfg, j.at("state_fields").get<std::string>());
    if (j.contains("sampling_mix"))
      apply_sampling_mix(cfg, j.at("sampling_mix").get<std::string>());
    if (j.contains("inv_penalty_mode"))
      apply_inv_penalty_mode(cfg, j.at("inv_penalty_mode").get<std::string>());
    if (j.contains("mh_steps")) cfg.sampler.n_steps = j.at("mh_steps").get<int>();
    if (j.contains("mh_warmup")) cfg.sampler.n_warmup = j.at("mh_warmup").get<int>();
    if (j.contains("mh_chains")) cfg.sampler.n_chains = j.at("mh_chains").get<int>();
    if (j.contains("eval_n_init")) cfg.eval_n_init = j.at("eval_n_init").get<int>();
    if (j.contains("eval_n_candidates"))
      cfg.eval_n_candidates = j.at("eval_n_candidates").get<int>();
    if (j.contains("cem_population")) cfg.cem_population = j.at("cem_population").get<int>();
    if (j.contains("cem_elites")) cfg.cem_elites = j.at("cem_elites").get<int>();
    if (j.contains("cem_init_std")) cfg.cem_init_std = j.at("cem_init_std").get<double>();
    if (j.contains("cem_std_floor")) cfg.cem_std_floor = j.at("cem_std_floor").get<double>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("single_thread")) cfg.single_thread = j.at("single_thread").get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError("config: bad value in '" + path + "': " + e.what());
  }
}

std::string config_fingerprint(const RunConfig& cfg) {
  std::string s;
  s.reserve(512);
  append_num(s, static_cast<double>(cfg.seed));
  append_num(s, cfg.epochs);
  append_num(s, cfg.n_envs);
  for (int h : cfg.hidden) append_num(s, h);
  append_num(s, cfg.log_std_init);
  append_num(s, cfg.ppo.adam.lr);
  append_num(s, cfg.ppo.adam.weight_decay);
  append_num(s, cfg.ppo.gamma);
  append_num(s, cfg.ppo.gae_lambda);
  append_num(s, cfg.ppo.clip_eps);
  append_num(s, cfg.ppo.epochs);
  append_num(s, cfg.ppo.minibatches);
  append_num(s, cfg.ppo.entropy_coef);
  append_num(s, cfg.ppo.value_coef);
  append_num(s, cfg.ppo.max_grad_norm);
  const auto& r = cfg.reward;
  append_num(s, r.lambda_dist);
  append_num(s, r.lambda_progress);
  append_num(s, r.lambda_success);
  append_num(s, r.lambda_inv);
  append_num(s, r.lambda_rho);
  append_num(s, r.use_dist);
  append_num(s, r.use_progress);
  append_num(s, r.use_success);
  append_num(s, r.use_inv);
  append_num(s, r.use_terminal_robustness);
  append_num(s, r.inv_mode == mdp::PenaltyMode::Persistent);
  append_num(s, cfg.state_fields.time);
  append_num(s, cfg.state_fields.flags);
  append_num(s, cfg.sampler.n_steps);
  append_num(s, cfg.sampler.n_warmup);
  append_num(s, cfg.sampler.n_chains);
  append_num(s, cfg.sampler.ratio_uniform);
  append_num(s, cfg.sampler.ratio_mcmc);
  append_num(s, cfg.sampler.ratio_elite);
  return s;
}

}  // namespace tgpo::harness
