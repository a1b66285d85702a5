#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "tgpo/harness/checkpoint.hpp"
#include "tgpo/harness/config.hpp"
#include "tgpo/learn/policy.hpp"
#include "tgpo/mdp/task.hpp"

namespace tgpo::harness {

// Rebuild networks from a checkpoint. load_critic throws when the checkpoint
// carries none (CEM runs).
learn::GaussianPolicy load_policy(const Checkpoint& ck);
learn::Critic load_critic(const Checkpoint& ck);

// Mean-action episode from x0 under the given assignment; returns the
// robustness of the visited raw-state trajectory.
double rollout_robustness(const mdp::Task& task, const learn::GaussianPolicy& policy,
                          const learn::ObservationEncoder& encoder,
                          const decomp::TimeAssignment& assignment, const Eigen::VectorXd& x0);

// Episode driven by a bare network on the raw plant: no certificate
// bookkeeping, the progress block stays fresh. encode_assignment only feeds
// the encoder.
double raw_rollout_robustness(const mdp::Task& task, const learn::Mlp& net,
                              const learn::ObservationEncoder& encoder,
                              const decomp::TimeAssignment& encode_assignment,
                              const Eigen::VectorXd& x0);

struct EvalReport {
  std::vector<std::uint8_t> success;            // per init state
  std::vector<double> robustness;               // per init state
  std::vector<decomp::TimeAssignment> chosen;   // per init state
  double success_rate = 0.0;                    // exact mean of success
  double wall_seconds = 0.0;
};

// Deployment protocol: per init state, draw candidate assignments (chain
// samples plus uniform, ratios renormalized from cfg.sampler), keep the
// critic argmax, run one deterministic episode, succeed iff robustness >= 0.
// The monitor verdict never feeds back into selection. Throws when the
// checkpoint's task hash disagrees with the scene.
EvalReport evaluate(const Checkpoint& ck, const env::SceneSpec& scene, const RunConfig& cfg,
                    Rng& rng);

void write_eval_csv(const EvalReport& report, const std::string& path);

struct Heatmap {
  int var_i = 0;
  int var_j = 1;
  int lo_i = 0;
  int lo_j = 0;
  Eigen::MatrixXd values;  // (span_i x span_j), row = t_i - lo_i
};

// Critic value over the full domains of the first two time variables, the
// rest pinned to their domain midpoints, at one sampled start state. Throws
// below two variables, and on any non-finite cell.
Heatmap critic_heatmap(const Checkpoint& ck, const env::SceneSpec& scene, std::uint64_t seed);

void write_heatmap_csv(const Heatmap& map, const std::string& path);

struct CorrelationReport {
  Eigen::VectorXd critic;       // sorted descending
  Eigen::VectorXd robustness;   // aligned with critic
  Eigen::VectorXd cum_success;  // success rate among the top-k rows
  double spearman = 0.0;
};

// Random feasible assignments scored by the critic and by one deterministic
// episode each, for checking that high critic value predicts satisfaction.
CorrelationReport correlate(const Checkpoint& ck, const env::SceneSpec& scene, int n_samples,
                            std::uint64_t seed);

void write_correlation_csv(const CorrelationReport& report, const std::string& path);

}  // namespace tgpo::harness
