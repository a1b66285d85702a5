#pragma once

#include <Eigen/Core>
#include <string>

#include "tgpo/harness/config.hpp"

namespace tgpo::harness {

// One cross-entropy step on flattened parameters. elites is (k x d), one row
// per elite. mean becomes the elite average; std the unbiased per-parameter
// spread around the new mean, floored elementwise.
void cem_update(const Eigen::MatrixXd& elites, double std_floor, Eigen::VectorXd& mean,
                Eigen::VectorXd& std);

struct CemResult {
  std::string checkpoint_path;
  std::string metrics_path;
  int iterations = 0;
  double best_fitness = 0.0;       // best single-episode robustness seen
  double final_elite_mean = 0.0;   // elite fitness average of the last iteration
};

// Derivative-free baseline: a deterministic network on the raw plant, scored
// by episode robustness, population cfg.cem_population with cfg.cem_elites
// winners, run for cfg.epochs iterations. Writes cem_checkpoint.bin and
// cem_metrics.csv under cfg.out_dir.
CemResult cem_train(const RunConfig& cfg);

}  // namespace tgpo::harness
