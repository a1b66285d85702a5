#pragma once

// Independent brute-force robustness evaluator used to cross-check the table-based
// monitor. Transcribes the recursive semantics directly: every point of every
// window is evaluated, and an empty clipped window anywhere in the recursion
// throws.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "tgpo/stl/formula.hpp"
#include "tgpo/stl/region.hpp"
#include "tgpo/stl/trajectory.hpp"

namespace tgpo::testing {

inline double oracle_robustness(const stl::Trajectory& sigma, int t, const stl::Formula& f,
                                const stl::RegionMap& regions) {
  using Kind = stl::Formula::Kind;
  const int horizon = sigma.length() - 1;
  if (t < 0 || t > horizon) throw std::runtime_error("oracle: time out of range");
  switch (f.kind()) {
    case Kind::True:
      return 1.0;
    case Kind::Predicate:
      return regions.at(f.label()).value(sigma.at(t));
    case Kind::Not:
      return -oracle_robustness(sigma, t, f.children()[0], regions);
    case Kind::And: {
      std::vector<double> vals;
      for (const auto& c : f.children()) vals.push_back(oracle_robustness(sigma, t, c, regions));
      return *std::min_element(vals.begin(), vals.end());
    }
    case Kind::Or: {
      std::vector<double> vals;
      for (const auto& c : f.children()) vals.push_back(oracle_robustness(sigma, t, c, regions));
      return *std::max_element(vals.begin(), vals.end());
    }
    case Kind::Eventually:
    case Kind::Always: {
      const int lo = t + f.interval().lo;
      const int hi = std::min(t + f.interval().hi, horizon);
      if (lo > hi) throw std::runtime_error("oracle: empty window");
      std::vector<double> vals;
      for (int u = lo; u <= hi; ++u)
        vals.push_back(oracle_robustness(sigma, u, f.children()[0], regions));
      return f.kind() == Kind::Eventually ? *std::max_element(vals.begin(), vals.end())
                                          : *std::min_element(vals.begin(), vals.end());
    }
    case Kind::Until: {
      const int lo = t + f.interval().lo;
      const int hi = std::min(t + f.interval().hi, horizon);
      if (lo > hi) throw std::runtime_error("oracle: empty window");
      std::vector<double> vals;
      for (int u = lo; u <= hi; ++u) {
        double right = oracle_robustness(sigma, u, f.children()[1], regions);
        std::vector<double> lefts;
        for (int w = t; w <= u; ++w)
          lefts.push_back(oracle_robustness(sigma, w, f.children()[0], regions));
        vals.push_back(std::min(right, *std::min_element(lefts.begin(), lefts.end())));
      }
      return *std::max_element(vals.begin(), vals.end());
    }
  }
  throw std::runtime_error("oracle: unreachable");
}

}  // namespace tgpo::testing
