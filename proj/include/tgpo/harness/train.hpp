#pragma once

#include <string>

#include "tgpo/harness/checkpoint.hpp"
#include "tgpo/harness/config.hpp"

namespace tgpo::harness {

struct TrainResult {
  std::string checkpoint_path;
  std::string metrics_path;
  std::string elites_path;
  int epochs_run = 0;
  double final_return = 0.0;
  double final_success = 0.0;
  double final_robustness = 0.0;
};

// Full training run: per epoch, compose an assignment batch, roll out every
// environment, apply the clipped-surrogate update, and fold episode scores
// into the elite buffer. Artifacts land in cfg.out_dir: checkpoint.bin,
// metrics.csv (one append-only row per epoch, no timestamps), elites.csv.
// A non-finite update aborts after dumping the offending batch.
TrainResult train(const RunConfig& cfg);

}  // namespace tgpo::harness
