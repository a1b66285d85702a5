// Python surface over the core library: STL parsing and monitoring, subgoal
// decomposition and grounding, plant stepping, and the train/evaluate
// entry points. Heavy knobs keep the same names as the command-line flags.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "tgpo/decomp/decompose.hpp"
#include "tgpo/decomp/taskset.hpp"
#include "tgpo/env/dynamics.hpp"
#include "tgpo/env/scene.hpp"
#include "tgpo/harness/checkpoint.hpp"
#include "tgpo/harness/config.hpp"
#include "tgpo/harness/evaluate.hpp"
#include "tgpo/harness/train.hpp"
#include "tgpo/stl/parser.hpp"
#include "tgpo/stl/robustness.hpp"
#include "tgpo/stl/trajectory.hpp"
#include "tgpo/util/error.hpp"

namespace py = pybind11;
using namespace tgpo;

namespace {

stl::Trajectory make_trajectory(const Eigen::MatrixXd& states, double dt) {
  std::vector<Eigen::VectorXd> rows;
  rows.reserve(states.rows());
  for (Eigen::Index i = 0; i < states.rows(); ++i) rows.push_back(states.row(i).transpose());
  return stl::Trajectory(std::move(rows), dt);
}

py::dict region_dict(const stl::Region& r) {
  py::dict d;
  d["label"] = r.label();
  d["projection"] = r.projection();
  if (r.is_circle()) {
    d["shape"] = "circle";
    d["center"] = Eigen::VectorXd(r.center());
    d["radius"] = r.radius();
  } else {
    d["shape"] = "box";
    d["lower"] = Eigen::VectorXd(r.lower());
    d["upper"] = Eigen::VectorXd(r.upper());
  }
  return d;
}

py::dict subgoal_dict(const decomp::Subgoal& g) {
  py::dict d;
  d["label"] = g.label;
  d["kind"] = g.kind == decomp::SubgoalKind::Reach ? "reach" : "stay";
  d["start"] = g.start.str();
  d["end"] = g.end.str();
  return d;
}

py::dict constraint_dict(const decomp::InvariantConstraint& c) {
  py::dict d;
  d["label"] = c.label;
  d["start"] = c.start.str();
  d["end"] = c.end.str();
  return d;
}

harness::RunConfig build_config(const std::string& scene, const std::string& profile,
                                std::uint64_t seed, int epochs, int n_envs,
                                std::optional<std::vector<int>> hidden,
                                const std::string& reward_terms, const std::string& state_fields,
                                const std::string& sampling_mix,
                                const std::string& inv_penalty_mode, const std::string& out,
                                bool single_thread, const std::string& config_file) {
  harness::RunConfig cfg = harness::profile(profile);
  cfg.scene_path = scene;
  cfg.seed = seed;
  if (epochs >= 0) cfg.epochs = epochs;
  if (n_envs > 0) cfg.n_envs = n_envs;
  if (hidden) cfg.hidden = *hidden;
  if (!reward_terms.empty()) harness::apply_reward_terms(cfg, reward_terms);
  if (!state_fields.empty()) harness::apply_state_fields(cfg, state_fields);
  if (!sampling_mix.empty()) harness::apply_sampling_mix(cfg, sampling_mix);
  if (!inv_penalty_mode.empty()) harness::apply_inv_penalty_mode(cfg, inv_penalty_mode);
  if (!out.empty()) cfg.out_dir = out;
  cfg.single_thread = single_thread;
  if (!config_file.empty()) harness::apply_config_file(cfg, config_file);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temporal-logic subgoal policies: monitoring, decomposition, training";

  py::register_exception<Error>(m, "TgpoError");

  py::class_<stl::Formula>(m, "Formula")
      .def("__str__", [](const stl::Formula& f) { return stl::format(f); })
      .def("__repr__", [](const stl::Formula& f) { return "Formula(" + stl::format(f) + ")"; });

  py::class_<decomp::TaskSet>(m, "TaskSet")
      .def_property_readonly("subgoals",
                             [](const decomp::TaskSet& ts) {
                               py::list out;
                               for (const auto& g : ts.subgoals) out.append(subgoal_dict(g));
                               return out;
                             })
      .def_property_readonly("constraints",
                             [](const decomp::TaskSet& ts) {
                               py::list out;
                               for (const auto& c : ts.constraints)
                                 out.append(constraint_dict(c));
                               return out;
                             })
      .def_property_readonly("variables",
                             [](const decomp::TaskSet& ts) {
                               py::list out;
                               for (const auto& v : ts.variables)
                                 out.append(py::make_tuple(v.lo, v.hi));
                               return out;
                             })
      .def("__repr__", [](const decomp::TaskSet& ts) {
        return "TaskSet(" + std::to_string(ts.n_subgoals()) + " subgoals, " +
               std::to_string(ts.n_constraints()) + " constraints, " +
               std::to_string(ts.n_variables()) + " variables)";
      });

  py::class_<env::SceneSpec>(m, "Scene")
      .def_static("load", &env::SceneSpec::load, py::arg("path"))
      .def_static("from_json_text", &env::SceneSpec::from_json_text, py::arg("text"),
                  py::arg("name") = "inline")
      .def_readonly("name", &env::SceneSpec::name)
      .def_property_readonly("stl", [](const env::SceneSpec& s) { return s.stl_text; })
      .def_property_readonly("formula", [](const env::SceneSpec& s) { return s.formula; })
      .def_property_readonly("dt", [](const env::SceneSpec& s) { return s.env.dt; })
      .def_property_readonly("horizon", [](const env::SceneSpec& s) { return s.env.horizon; })
      .def_property_readonly("state_dim", [](const env::SceneSpec& s) { return s.env.state_dim; })
      .def_property_readonly("control_dim",
                             [](const env::SceneSpec& s) { return s.env.control_dim; })
      .def_property_readonly("regions",
                             [](const env::SceneSpec& s) {
                               py::dict out;
                               for (const auto& [label, r] : s.regions)
                                 out[py::str(label)] = region_dict(r);
                               return out;
                             })
      .def("sample_init",
           [](const env::SceneSpec& s, std::uint64_t seed) {
             Rng rng(seed);
             return env::sample_initial(s.env, rng);
           },
           py::arg("seed") = 0)
      .def("step",
           [](const env::SceneSpec& s, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
             return env::step(s.env, x, u);
           },
           py::arg("x"), py::arg("u"))
      .def("__repr__", [](const env::SceneSpec& s) { return "Scene(" + s.name + ")"; });

  m.def("parse", &stl::parse, py::arg("text"), "Parse an STL formula from text.");
  m.def("format", &stl::format, py::arg("formula"), "Render a formula back to text.");

  m.def("robustness",
        [](const Eigen::MatrixXd& states, const stl::Formula& f, const env::SceneSpec& scene,
           int t, double dt) {
          const double use_dt = dt > 0.0 ? dt : scene.env.dt;
          return stl::robustness(make_trajectory(states, use_dt), t, f, scene.regions);
        },
        py::arg("states"), py::arg("formula"), py::arg("scene"), py::arg("t") = 0,
        py::arg("dt") = -1.0,
        "Robustness of a trajectory (rows are states) at time t under the scene's regions.");

  m.def("satisfies",
        [](const Eigen::MatrixXd& states, const stl::Formula& f, const env::SceneSpec& scene,
           double dt) {
          const double use_dt = dt > 0.0 ? dt : scene.env.dt;
          return stl::satisfies(make_trajectory(states, use_dt), f, scene.regions);
        },
        py::arg("states"), py::arg("formula"), py::arg("scene"), py::arg("dt") = -1.0);

  m.def("decompose", &decomp::decompose, py::arg("formula"),
        "Flatten a formula into timed subgoals, invariant constraints, and time variables.");

  m.def("ground",
        [](const decomp::TaskSet& ts, const decomp::TimeAssignment& a, int horizon) {
          const decomp::GroundedPlan plan = decomp::ground(ts, a, horizon);
          py::dict out;
          py::list subgoals, constraints;
          for (const auto& w : plan.subgoals) {
            py::dict d;
            d["start"] = w.start;
            d["end"] = w.end;
            d["subgoal"] = w.source_index;
            subgoals.append(d);
          }
          for (const auto& w : plan.constraints) {
            py::dict d;
            d["start"] = w.start;
            d["end"] = w.end;
            d["constraint"] = w.source_index;
            constraints.append(d);
          }
          out["subgoals"] = subgoals;
          out["constraints"] = constraints;
          out["assignment"] = plan.assignment;
          return out;
        },
        py::arg("taskset"), py::arg("assignment"), py::arg("horizon"),
        "Evaluate every window under a concrete assignment; subgoals sorted by start.");

  m.def("sample_assignment",
        [](const decomp::TaskSet& ts, int horizon, std::uint64_t seed) {
          Rng rng(seed);
          return decomp::sample_uniform(ts, horizon, rng);
        },
        py::arg("taskset"), py::arg("horizon"), py::arg("seed") = 0,
        "Uniform feasible time assignment (rejection sampled).");

  m.def("train",
        [](const std::string& scene, const std::string& profile, std::uint64_t seed, int epochs,
           int n_envs, std::optional<std::vector<int>> hidden, const std::string& reward_terms,
           const std::string& state_fields, const std::string& sampling_mix,
           const std::string& inv_penalty_mode, const std::string& out, bool single_thread,
           const std::string& config) {
          harness::RunConfig cfg =
              build_config(scene, profile, seed, epochs, n_envs, std::move(hidden), reward_terms,
                           state_fields, sampling_mix, inv_penalty_mode, out, single_thread,
                           config);
          const harness::TrainResult r = harness::train(cfg);
          py::dict d;
          d["checkpoint"] = r.checkpoint_path;
          d["metrics"] = r.metrics_path;
          d["elites"] = r.elites_path;
          d["epochs"] = r.epochs_run;
          d["final_return"] = r.final_return;
          d["final_success"] = r.final_success;
          d["final_robustness"] = r.final_robustness;
          return d;
        },
        py::arg("scene"), py::arg("profile") = "desk", py::arg("seed") = 0,
        py::arg("epochs") = -1, py::arg("n_envs") = -1, py::arg("hidden") = std::nullopt,
        py::arg("reward_terms") = "", py::arg("state_fields") = "",
        py::arg("sampling_mix") = "", py::arg("inv_penalty_mode") = "", py::arg("out") = ".",
        py::arg("single_thread") = false, py::arg("config") = "",
        "Train a policy/critic pair and write checkpoint, metrics, and elite CSVs.");

  m.def("evaluate",
        [](const std::string& checkpoint, const std::string& scene, int n_init, int n_candidates,
           std::uint64_t seed, const std::string& profile) {
          harness::Checkpoint ck = harness::Checkpoint::load(checkpoint);
          env::SceneSpec spec = env::SceneSpec::load(scene);
          harness::RunConfig cfg = harness::profile(profile);
          cfg.scene_path = scene;
          if (n_init > 0) cfg.eval_n_init = n_init;
          if (n_candidates > 0) cfg.eval_n_candidates = n_candidates;
          Rng rng(seed);
          const harness::EvalReport r = harness::evaluate(ck, spec, cfg, rng);
          py::dict d;
          d["success_rate"] = r.success_rate;
          d["wall_seconds"] = r.wall_seconds;
          py::list success, robustness, chosen;
          for (std::size_t i = 0; i < r.success.size(); ++i) {
            success.append(static_cast<bool>(r.success[i]));
            robustness.append(r.robustness[i]);
            chosen.append(r.chosen[i]);
          }
          d["success"] = success;
          d["robustness"] = robustness;
          d["chosen"] = chosen;
          return d;
        },
        py::arg("checkpoint"), py::arg("scene"), py::arg("n_init") = -1,
        py::arg("n_candidates") = -1, py::arg("seed") = 0, py::arg("profile") = "desk",
        "Candidate-search evaluation of a trained checkpoint over sampled initial states.");
}
