#include "tgpo/ground/sampler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tgpo/util/error.hpp"

namespace tgpo::ground {

void SamplerConfig::validate() const {
  if (n_steps <= 0 || n_chains <= 0) throw ConfigError("sampler: steps and chains must be positive");
  if (n_warmup < 0 || n_warmup >= n_steps) throw ConfigError("sampler: warmup must lie in [0, steps)");
  if (ratio_uniform < 0 || ratio_mcmc < 0 || ratio_elite < 0)
    throw ConfigError("sampler: ratios must be non-negative");
  if (std::abs(ratio_uniform + ratio_mcmc + ratio_elite - 1.0) > 1e-9)
    throw ConfigError("sampler: ratios must sum to 1");
}

decomp::TimeAssignment propose_move(const decomp::TimeAssignment& t,
                                    const std::vector<decomp::TimeVariable>& domains, int j,
                                    int delta) {
  const auto idx = static_cast<std::size_t>(j);
  const int moved = t[idx] + delta;
  if (moved < domains[idx].lo || moved > domains[idx].hi) return t;
  decomp::TimeAssignment out = t;
  out[idx] = moved;
  return out;
}

decomp::TimeAssignment propose(const decomp::TimeAssignment& t,
                               const std::vector<decomp::TimeVariable>& domains, Rng& rng) {
  if (t.empty()) return t;
  const int j = rng.uniform_int(0, static_cast<int>(t.size()) - 1);
  const int delta = rng.uniform() < 0.5 ? -1 : 1;
  return propose_move(t, domains, j, delta);
}

double acceptance_probability(double score_cur, double score_new) {
  return std::min(1.0, std::exp(score_new - score_cur));
}

namespace {

Eigen::VectorXd checked_scores(const BatchScoreFn& score,
                               const std::vector<decomp::TimeAssignment>& batch) {
  Eigen::VectorXd s = score(batch);
  if (s.size() != static_cast<Eigen::Index>(batch.size()))
    throw Error("sampler: score function returned wrong count");
  if (!s.allFinite()) throw Error("sampler: non-finite score");
  return s;
}

}  // namespace

MhResult mh_run(const decomp::TaskSet& ts, int horizon, const BatchScoreFn& score,
                const SamplerConfig& cfg, Rng& rng, bool keep_pooled) {
  cfg.validate();
  const int n_chains = cfg.n_chains;
  MhResult out;
  if (ts.n_variables() == 0) {
    out.best.assign(static_cast<std::size_t>(n_chains), decomp::TimeAssignment{});
    if (keep_pooled)
      out.pooled.assign(static_cast<std::size_t>(n_chains) *
                            static_cast<std::size_t>(cfg.n_steps - cfg.n_warmup),
                        decomp::TimeAssignment{});
    out.acceptance_rate = 0.0;
    return out;
  }

  std::vector<Rng> streams;
  streams.reserve(static_cast<std::size_t>(n_chains));
  for (int c = 0; c < n_chains; ++c) streams.push_back(rng.child(static_cast<std::uint64_t>(c)));

  std::vector<decomp::TimeAssignment> current(static_cast<std::size_t>(n_chains));
  for (int c = 0; c < n_chains; ++c)
    current[static_cast<std::size_t>(c)] =
        decomp::sample_uniform(ts, horizon, streams[static_cast<std::size_t>(c)]);
  Eigen::VectorXd cur_score = checked_scores(score, current);

  std::vector<double> best_score(static_cast<std::size_t>(n_chains),
                                 -std::numeric_limits<double>::infinity());
  out.best.resize(static_cast<std::size_t>(n_chains));
  if (keep_pooled)
    out.pooled.reserve(static_cast<std::size_t>(n_chains) *
                       static_cast<std::size_t>(cfg.n_steps - cfg.n_warmup));

  std::vector<decomp::TimeAssignment> candidates;
  std::vector<int> candidate_chain;
  long accepted = 0, proposed = 0;
  for (int step = 0; step < cfg.n_steps; ++step) {
    candidates.clear();
    candidate_chain.clear();
    for (int c = 0; c < n_chains; ++c) {
      auto& stream = streams[static_cast<std::size_t>(c)];
      const auto& cur = current[static_cast<std::size_t>(c)];
      decomp::TimeAssignment cand = propose(cur, ts.variables, stream);
      if (cand == cur) continue;  // boundary self-loop
      if (!decomp::try_ground(ts, cand, horizon).has_value()) continue;  // stays in place
      candidates.push_back(std::move(cand));
      candidate_chain.push_back(c);
    }
    if (!candidates.empty()) {
      const Eigen::VectorXd cand_score = checked_scores(score, candidates);
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const int c = candidate_chain[i];
        ++proposed;
        const double alpha =
            acceptance_probability(cur_score[c], cand_score[static_cast<Eigen::Index>(i)]);
        if (streams[static_cast<std::size_t>(c)].uniform() < alpha) {
          current[static_cast<std::size_t>(c)] = candidates[i];
          cur_score[c] = cand_score[static_cast<Eigen::Index>(i)];
          ++accepted;
        }
      }
    }
    if (step >= cfg.n_warmup) {
      for (int c = 0; c < n_chains; ++c) {
        if (keep_pooled) out.pooled.push_back(current[static_cast<std::size_t>(c)]);
        if (cur_score[c] > best_score[static_cast<std::size_t>(c)]) {
          best_score[static_cast<std::size_t>(c)] = cur_score[c];
          out.best[static_cast<std::size_t>(c)] = current[static_cast<std::size_t>(c)];
        }
      }
    }
  }
  out.acceptance_rate = proposed == 0 ? 0.0 : static_cast<double>(accepted) / proposed;
  return out;
}

std::vector<decomp::TimeAssignment> mh_sample(const decomp::TaskSet& ts, int horizon,
                                              const BatchScoreFn& score,
                                              const SamplerConfig& cfg, Rng& rng) {
  return mh_run(ts, horizon, score, cfg, rng, false).best;
}

std::vector<decomp::TimeAssignment> mh_collect(const decomp::TaskSet& ts, int horizon,
                                               const BatchScoreFn& score,
                                               const SamplerConfig& cfg, Rng& rng) {
  return mh_run(ts, horizon, score, cfg, rng, true).pooled;
}

std::vector<decomp::TimeAssignment> compose_batch(const decomp::TaskSet& ts, int horizon, int n,
                                                  const BatchScoreFn* score,
                                                  const EliteBuffer& elites,
                                                  const SamplerConfig& cfg, Rng& rng) {
  if (n <= 0) throw std::invalid_argument("compose_batch: n must be positive");
  cfg.validate();
  if (ts.n_variables() == 0)
    return std::vector<decomp::TimeAssignment>(static_cast<std::size_t>(n),
                                               decomp::TimeAssignment{});

  const int n_uniform = static_cast<int>(std::floor(cfg.ratio_uniform * n));
  int n_mcmc = static_cast<int>(std::floor(cfg.ratio_mcmc * n));
  if (score == nullptr || *score == nullptr) n_mcmc = 0;
  const int n_elite_slots = n - n_uniform - n_mcmc;

  std::vector<decomp::TimeAssignment> batch;
  batch.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n_uniform; ++i) batch.push_back(decomp::sample_uniform(ts, horizon, rng));
  if (n_mcmc > 0) {
    SamplerConfig chain_cfg = cfg;
    chain_cfg.n_chains = n_mcmc;
    Rng mh_rng = rng.child(0x6d686d68ull);
    auto sampled = mh_sample(ts, horizon, *score, chain_cfg, mh_rng);
    batch.insert(batch.end(), sampled.begin(), sampled.end());
  }
  auto elite = elites.top(static_cast<std::size_t>(n_elite_slots));
  batch.insert(batch.end(), elite.begin(), elite.end());
  while (static_cast<int>(batch.size()) < n)
    batch.push_back(decomp::sample_uniform(ts, horizon, rng));
  return batch;
}

}  // namespace tgpo::ground
