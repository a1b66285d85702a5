#pragma once

#include "tgpo/decomp/taskset.hpp"
#include "tgpo/env/scene.hpp"
#include "tgpo/stl/formula.hpp"
#include "tgpo/stl/region.hpp"

namespace tgpo::mdp {

// Everything fixed for a scene across training: plant, regions, formula, and
// its flattened task set.
struct Task {
  env::EnvSpec env;
  stl::RegionMap regions;
  stl::Formula formula = stl::Formula::boolean_true();
  decomp::TaskSet taskset;
};

Task make_task(const env::SceneSpec& scene);

}  // namespace tgpo::mdp
