#include "tgpo/env/scene.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "tgpo/stl/parser.hpp"
#include "tgpo/util/error.hpp"

namespace tgpo::env {
namespace {

using nlohmann::json;

Eigen::VectorXd to_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError("scene: " + what + " must be an array");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

DynamicsId dynamics_from_name(const std::string& name) {
  if (name == "linear") return DynamicsId::Linear;
  if (name == "unicycle") return DynamicsId::Unicycle;
  if (name == "quadrotor") return DynamicsId::Quadrotor;
  throw ConfigError("scene: unknown dynamics '" + name + "'");
}

EnvSpec env_from_json(const json& j) {
  if (!j.contains("dynamics")) throw ConfigError("scene: env.dynamics is required");
  EnvSpec spec;
  switch (dynamics_from_name(j.at("dynamics").get<std::string>())) {
    case DynamicsId::Linear:
      spec = EnvSpec::linear();
      break;
    case DynamicsId::Unicycle:
      spec = EnvSpec::unicycle();
      break;
    case DynamicsId::Quadrotor:
      spec = EnvSpec::quadrotor();
      break;
  }
  if (j.contains("dt")) spec.dt = j.at("dt").get<double>();
  if (j.contains("horizon")) spec.horizon = j.at("horizon").get<int>();
  if (j.contains("bounds")) {
    spec.control_lower = to_vector(j.at("bounds").at("lower"), "env.bounds.lower");
    spec.control_upper = to_vector(j.at("bounds").at("upper"), "env.bounds.upper");
  }
  if (j.contains("init_box")) {
    spec.init_lower = to_vector(j.at("init_box").at("lower"), "env.init_box.lower");
    spec.init_upper = to_vector(j.at("init_box").at("upper"), "env.init_box.upper");
  }
  if (j.contains("workspace")) {
    spec.workspace_lower = to_vector(j.at("workspace").at("lower"), "env.workspace.lower");
    spec.workspace_upper = to_vector(j.at("workspace").at("upper"), "env.workspace.upper");
  }
  if (j.contains("quad_arm")) spec.quad_arm = j.at("quad_arm").get<double>();
  if (j.contains("quad_yaw_coef")) spec.quad_yaw_coef = j.at("quad_yaw_coef").get<double>();
  spec.validate();
  return spec;
}

stl::Region region_from_json(const json& j, const std::vector<int>& default_projection) {
  const std::string label = j.at("label").get<std::string>();
  std::vector<int> projection = default_projection;
  if (j.contains("projection")) projection = j.at("projection").get<std::vector<int>>();
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "circle")
    return stl::Region::circle(label, to_vector(j.at("center"), "region center"),
                               j.at("radius").get<double>(), projection);
  if (shape == "box")
    return stl::Region::box(label, to_vector(j.at("lower"), "region lower"),
                            to_vector(j.at("upper"), "region upper"), projection);
  throw ConfigError("scene: region '" + label + "' has unknown shape '" + shape + "'");
}

void collect_labels(const stl::Formula& f, std::vector<std::string>& out) {
  if (f.kind() == stl::Formula::Kind::Predicate) out.push_back(f.label());
  for (const auto& c : f.children()) collect_labels(c, out);
}

}  // namespace

SceneSpec SceneSpec::from_json_text(const std::string& text, const std::string& name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scene: malformed JSON: ") + e.what());
  }

  SceneSpec scene;
  scene.name = j.value("name", name);
  if (!j.contains("env")) throw ConfigError("scene: missing env section");
  scene.env = env_from_json(j.at("env"));

  if (j.contains("regions"))
    for (const auto& rj : j.at("regions")) {
      stl::Region r = region_from_json(rj, scene.env.position);
      if (!scene.regions.emplace(r.label(), r).second)
        throw ConfigError("scene: duplicate region label '" + r.label() + "'");
    }

  if (!j.contains("stl")) throw ConfigError("scene: missing stl formula");
  scene.stl_text = j.at("stl").get<std::string>();
  scene.formula = stl::parse(scene.stl_text);

  std::vector<std::string> labels;
  collect_labels(scene.formula, labels);
  for (const auto& label : labels)
    if (!scene.regions.count(label))
      throw ConfigError("scene: formula references undefined region '" + label + "'");
  return scene;
}

SceneSpec SceneSpec::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open scene file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return from_json_text(buf.str(), std::filesystem::path(path).stem().string());
}

}  // namespace tgpo::env
