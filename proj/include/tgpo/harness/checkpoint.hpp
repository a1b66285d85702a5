#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tgpo/env/scene.hpp"
#include "tgpo/harness/config.hpp"
#include "tgpo/learn/mlp.hpp"
#include "tgpo/learn/observation.hpp"

namespace tgpo::harness {

std::uint64_t fnv1a(std::string_view s);

// Canonical rendering of everything that defines the task: formula, regions,
// plant parameters. Two scenes with the same fingerprint are interchangeable
// at evaluation time.
std::string task_fingerprint(const env::SceneSpec& scene);
std::uint64_t task_hash(const env::SceneSpec& scene);

enum class CheckpointKind : std::uint32_t { PolicyCritic = 0, Cem = 1 };

// Versioned binary weight dump. Loading refuses unknown magic/version;
// evaluation refuses a checkpoint whose task hash disagrees with the scene.
struct Checkpoint {
  CheckpointKind kind = CheckpointKind::PolicyCritic;
  std::uint64_t task = 0;
  std::uint64_t config = 0;
  std::uint64_t seed = 0;
  learn::StateFields fields;
  std::vector<int> hidden;
  int obs_dim = 0;
  int act_dim = 0;
  std::optional<learn::Mlp> policy_net;
  Eigen::VectorXd log_std;
  std::optional<learn::Mlp> critic_net;  // absent for CEM checkpoints

  void save(const std::string& path) const;
  static Checkpoint load(const std::string& path);
};

}  // namespace tgpo::harness
