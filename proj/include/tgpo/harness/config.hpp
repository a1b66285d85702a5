#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tgpo/ground/sampler.hpp"
#include "tgpo/learn/observation.hpp"
#include "tgpo/learn/ppo.hpp"
#include "tgpo/mdp/augmented.hpp"

namespace tgpo::harness {

// Everything a run needs. Assembled in three layers: built-in defaults (or a
// named profile), then command-line flags, then the config file, each layer
// overriding the previous one.
struct RunConfig {
  std::string scene_path;
  std::uint64_t seed = 0;
  int epochs = 1000;
  int n_envs = 512;
  std::vector<int> hidden = {512, 512, 512};
  double log_std_init = 0.0;

  mdp::RewardConfig reward;
  learn::PpoConfig ppo;
  ground::SamplerConfig sampler;
  learn::StateFields state_fields;

  int eval_n_init = 512;
  int eval_n_candidates = 512;

  int cem_population = 512;
  int cem_elites = 32;
  double cem_init_std = 0.05;
  double cem_std_floor = 1e-3;

  std::string out_dir = ".";
  bool single_thread = false;

  void validate() const;
};

// Named bundles: "desk" (small nets, short runs for CPU-scale work) and
// "paper" (full-scale settings). Unknown names raise ConfigError.
RunConfig profile(const std::string& name);

// Switch-string parsers shared by the CLI and the config file.
// reward terms: "full", "stl-only", or a comma list from
// {dist,progress,success,inv,terminal}; listed terms are on, the rest off.
void apply_reward_terms(RunConfig& cfg, const std::string& spec);
// state fields: "all", "none", or a comma list from {time,flags}.
void apply_state_fields(RunConfig& cfg, const std::string& spec);
// sampling mix: "hybrid", "uniform", or "u,m,e" ratios summing to one.
void apply_sampling_mix(RunConfig& cfg, const std::string& spec);
// invariant penalty: "once" or "persistent".
void apply_inv_penalty_mode(RunConfig& cfg, const std::string& spec);

// JSON config file; every present key overrides the current value. Unknown
// keys raise ConfigError.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Canonical one-line rendering of the fields that shape training, used for
// the checkpoint config hash.
std::string config_fingerprint(const RunConfig& cfg);

}  // namespace tgpo::harness
