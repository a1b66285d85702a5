#pragma once

// Randomized formulas, trajectories, and a fixed region set shared by the
// property tests and the acceptance checks.

#include <string>
#include <vector>

#include "tgpo/stl/formula.hpp"
#include "tgpo/stl/region.hpp"
#include "tgpo/stl/trajectory.hpp"
#include "tgpo/util/rng.hpp"

namespace tgpo::testing {

// Three overlapping regions over a 2D state so predicate values change sign
// along random walks.
inline stl::RegionMap test_regions() {
  stl::RegionMap m;
  m.emplace("A", stl::Region::circle("A", Eigen::Vector2d(0.0, 0.0), 1.0, {0, 1}));
  m.emplace("B", stl::Region::circle("B", Eigen::Vector2d(1.0, 1.0), 1.5, {0, 1}));
  m.emplace("C", stl::Region::box("C", Eigen::Vector2d(-2.0, -2.0), Eigen::Vector2d(0.0, 0.0),
                                  {0, 1}));
  return m;
}

inline stl::Trajectory random_trajectory(Rng& rng, int length) {
  std::vector<Eigen::VectorXd> states;
  Eigen::Vector2d x(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
  for (int t = 0; t < length; ++t) {
    states.push_back(x);
    x[0] = std::clamp(x[0] + rng.uniform(-0.8, 0.8), -3.0, 3.0);
    x[1] = std::clamp(x[1] + rng.uniform(-0.8, 0.8), -3.0, 3.0);
  }
  return stl::Trajectory(std::move(states), 0.2);
}

// Random formula over labels A/B/C with bounded depth and window extents.
// Covers every operator, including the ones only the monitor accepts.
inline stl::Formula random_formula(Rng& rng, int depth) {
  static const std::vector<std::string> labels{"A", "B", "C"};
  const auto leaf = [&]() -> stl::Formula {
    if (rng.uniform_int(0, 9) == 0) return stl::Formula::boolean_true();
    return stl::Formula::predicate(labels[rng.uniform_int(0, 2)]);
  };
  if (depth <= 0 || rng.uniform_int(0, 3) == 0) return leaf();
  const auto interval = [&]() {
    int lo = rng.uniform_int(0, 8);
    return stl::Interval(lo, lo + rng.uniform_int(0, 10));
  };
  switch (rng.uniform_int(0, 5)) {
    case 0:
      return stl::Formula::negation(random_formula(rng, depth - 1));
    case 1: {
      std::vector<stl::Formula> kids;
      for (int i = rng.uniform_int(2, 3); i > 0; --i)
        kids.push_back(random_formula(rng, depth - 1));
      return stl::Formula::conjunction(std::move(kids));
    }
    case 2: {
      std::vector<stl::Formula> kids;
      for (int i = rng.uniform_int(2, 3); i > 0; --i)
        kids.push_back(random_formula(rng, depth - 1));
      return stl::Formula::disjunction(std::move(kids));
    }
    case 3:
      return stl::Formula::eventually(interval(), random_formula(rng, depth - 1));
    case 4:
      return stl::Formula::always(interval(), random_formula(rng, depth - 1));
    default:
      return stl::Formula::until(interval(), random_formula(rng, depth - 1),
                                 random_formula(rng, depth - 1));
  }
}

}  // namespace tgpo::testing
