#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "tgpo/decomp/taskset.hpp"
#include "tgpo/ground/elite.hpp"
#include "tgpo/util/rng.hpp"

namespace tgpo::ground {

// Chain geometry plus the hybrid batch ratios. Ratios must be non-negative
// and sum to one.
struct SamplerConfig {
  int n_steps = 500;
  int n_warmup = 200;
  int n_chains = 512;
  double ratio_uniform = 0.5;
  double ratio_mcmc = 0.4;
  double ratio_elite = 0.1;
  void validate() const;
};

// Scores a batch of assignments at once (one GEMM per sampler step when the
// score comes from a value network). Must return finite values.
using BatchScoreFn = std::function<Eigen::VectorXd(const std::vector<decomp::TimeAssignment>&)>;

// Deterministic single move: variable j shifted by delta, unchanged when the
// move leaves the domain.
decomp::TimeAssignment propose_move(const decomp::TimeAssignment& t,
                                    const std::vector<decomp::TimeVariable>& domains, int j,
                                    int delta);

// Random-walk proposal: uniform variable, uniform step in {-1, +1}; boundary
// moves return t unchanged. Zero-variable assignments are their own proposal.
decomp::TimeAssignment propose(const decomp::TimeAssignment& t,
                               const std::vector<decomp::TimeVariable>& domains, Rng& rng);

// min(1, exp(score_new - score_cur))
double acceptance_probability(double score_cur, double score_new);

struct MhResult {
  std::vector<decomp::TimeAssignment> best;    // per chain: highest-scoring kept sample
  std::vector<decomp::TimeAssignment> pooled;  // every kept sample, when requested
  double acceptance_rate = 0.0;
};

// Lockstep Metropolis-Hastings over the feasible assignments: chains start
// uniform-feasible, horizon-overflowing proposals count as rejections, and
// samples are kept from step n_warmup on. Throws on non-finite scores.
MhResult mh_run(const decomp::TaskSet& ts, int horizon, const BatchScoreFn& score,
                const SamplerConfig& cfg, Rng& rng, bool keep_pooled);

// One assignment per chain (the per-chain best kept sample).
std::vector<decomp::TimeAssignment> mh_sample(const decomp::TaskSet& ts, int horizon,
                                              const BatchScoreFn& score,
                                              const SamplerConfig& cfg, Rng& rng);

// All kept samples pooled across chains.
std::vector<decomp::TimeAssignment> mh_collect(const decomp::TaskSet& ts, int horizon,
                                               const BatchScoreFn& score,
                                               const SamplerConfig& cfg, Rng& rng);

// Hybrid batch: floor(ratio_uniform*n) uniform + floor(ratio_mcmc*n) MH + the
// remainder from the top of the elite buffer, shortfalls refilled uniformly.
// A null score routes the MH share to uniform. Zero-variable task sets yield
// n copies of the empty assignment.
std::vector<decomp::TimeAssignment> compose_batch(const decomp::TaskSet& ts, int horizon, int n,
                                                  const BatchScoreFn* score,
                                                  const EliteBuffer& elites,
                                                  const SamplerConfig& cfg, Rng& rng);

}  // namespace tgpo::ground
