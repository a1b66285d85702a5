#pragma once

#include <string>

#include "tgpo/env/dynamics.hpp"
#include "tgpo/stl/formula.hpp"
#include "tgpo/stl/region.hpp"

namespace tgpo::env {

// A task instance: plant, labeled regions, and the formula tying them
// together. Loaded from a JSON scene file (schema in the README).
struct SceneSpec {
  std::string name;
  EnvSpec env;
  stl::RegionMap regions;
  std::string stl_text;
  stl::Formula formula = stl::Formula::boolean_true();

  static SceneSpec load(const std::string& path);
  static SceneSpec from_json_text(const std::string& text, const std::string& name);
};

}  // namespace tgpo::env
