#include "tgpo/stl/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "tgpo/util/error.hpp"

namespace tgpo::stl {
namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

// Bottom-up evaluator: one value table per distinct subformula node, indexed
// by time step. NaN marks points whose (possibly nested) window is empty
// after clipping; it poisons every consumer, matching a strict recursive
// evaluation that would fail there. Only the queried root point must be
// defined.
class Tables {
 public:
  Tables(const Trajectory& sigma, const RegionMap& regions)
      : sigma_(sigma), regions_(regions), horizon_(sigma.length() - 1) {}

  const std::vector<double>& table(const Formula& f) {
    auto it = cache_.find(f.id());
    if (it != cache_.end()) return it->second;
    return cache_.emplace(f.id(), compute(f)).first->second;
  }

 private:
  const Trajectory& sigma_;
  const RegionMap& regions_;
  int horizon_;
  std::unordered_map<const void*, std::vector<double>> cache_;

  std::vector<double> compute(const Formula& f) {
    const int n = horizon_ + 1;
    std::vector<double> out(n, kUndefined);
    switch (f.kind()) {
      case Formula::Kind::True:
        std::fill(out.begin(), out.end(), 1.0);
        break;
      case Formula::Kind::Predicate: {
        auto it = regions_.find(f.label());
        if (it == regions_.end()) throw MonitorError("unknown region label '" + f.label() + "'");
        for (int t = 0; t < n; ++t) out[t] = it->second.value(sigma_.at(t));
        break;
      }
      case Formula::Kind::Not: {
        const auto& c = table(f.children()[0]);
        for (int t = 0; t < n; ++t) out[t] = -c[t];
        break;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        const bool is_and = f.kind() == Formula::Kind::And;
        std::fill(out.begin(), out.end(),
                  is_and ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity());
        for (const Formula& child : f.children()) {
          const auto& c = table(child);
          for (int t = 0; t < n; ++t) {
            if (std::isnan(c[t]))
              out[t] = kUndefined;
            else if (!std::isnan(out[t]))
              out[t] = is_and ? std::min(out[t], c[t]) : std::max(out[t], c[t]);
          }
        }
        break;
      }
      case Formula::Kind::Eventually:
      case Formula::Kind::Always: {
        const bool is_f = f.kind() == Formula::Kind::Eventually;
        const auto& c = table(f.children()[0]);
        const Interval iv = f.interval();
        for (int t = 0; t < n; ++t) {
          const int lo = t + iv.lo;
          const int hi = std::min(t + iv.hi, horizon_);
          if (lo > hi) continue;  // empty window, stays undefined
          double acc = is_f ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
          for (int u = lo; u <= hi; ++u) {
            if (std::isnan(c[u])) {
              acc = kUndefined;
              break;
            }
            acc = is_f ? std::max(acc, c[u]) : std::min(acc, c[u]);
          }
          out[t] = acc;
        }
        break;
      }
      case Formula::Kind::Until: {
        const auto& left = table(f.children()[0]);
        const auto& right = table(f.children()[1]);
        const Interval iv = f.interval();
        for (int t = 0; t < n; ++t) {
          const int lo = t + iv.lo;
          const int hi = std::min(t + iv.hi, horizon_);
          if (lo > hi) continue;
          // best over t' in [lo, hi] of min(right(t'), inf left over [t, t'])
          double best = -std::numeric_limits<double>::infinity();
          double inf_left = std::numeric_limits<double>::infinity();
          bool bad = false;
          for (int u = t; u <= hi; ++u) {
            if (std::isnan(left[u]) || (u >= lo && std::isnan(right[u]))) {
              bad = true;
              break;
            }
            inf_left = std::min(inf_left, left[u]);
            if (u >= lo) best = std::max(best, std::min(right[u], inf_left));
          }
          out[t] = bad ? kUndefined : best;
        }
        break;
      }
    }
    return out;
  }
};

}  // namespace

double robustness(const Trajectory& sigma, int t, const Formula& f, const RegionMap& regions) {
  if (sigma.length() == 0) throw MonitorError("empty trajectory");
  if (t < 0 || t >= sigma.length()) throw MonitorError("query time outside trajectory");
  Tables tables(sigma, regions);
  double v = tables.table(f)[static_cast<size_t>(t)];
  if (std::isnan(v))
    throw MonitorError("empty effective window: formula exceeds trajectory horizon");
  return v;
}

bool satisfies(const Trajectory& sigma, const Formula& f, const RegionMap& regions) {
  return robustness(sigma, 0, f, regions) >= 0.0;
}

}  // namespace tgpo::stl
