#include "tgpo/decomp/taskset.hpp"

#include <algorithm>

#include "tgpo/util/error.hpp"

namespace tgpo::decomp {

TimeExpr TimeExpr::plus(int c) const {
  TimeExpr e = *this;
  e.offset += c;
  return e;
}

TimeExpr TimeExpr::plus_var(int id) const {
  TimeExpr e = *this;
  e.vars.push_back(id);
  return e;
}

int TimeExpr::eval(const TimeAssignment& a) const {
  int v = offset;
  for (int id : vars) {
    if (id < 0 || id >= static_cast<int>(a.size()))
      throw GroundError("time expression references unassigned variable t" + std::to_string(id));
    v += a[id];
  }
  return v;
}

std::string TimeExpr::str() const {
  std::string s;
  for (int id : vars) {
    if (!s.empty()) s += "+";
    s += "t" + std::to_string(id);
  }
  if (offset != 0 || s.empty()) {
    if (!s.empty()) s += "+";
    s += std::to_string(offset);
  }
  return s;
}

namespace {

void check_assignment(const TaskSet& ts, const TimeAssignment& a) {
  if (a.size() != ts.variables.size())
    throw GroundError("assignment covers " + std::to_string(a.size()) + " variables, task has " +
                      std::to_string(ts.variables.size()));
  for (const TimeVariable& v : ts.variables)
    if (a[v.id] < v.lo || a[v.id] > v.hi)
      throw GroundError("t" + std::to_string(v.id) + "=" + std::to_string(a[v.id]) +
                        " outside its domain [" + std::to_string(v.lo) + "," +
                        std::to_string(v.hi) + "]");
}

// Returns false on horizon overflow or inverted window.
bool eval_window(const TimeExpr& start, const TimeExpr& end, const TimeAssignment& a, int horizon,
                 GroundedWindow& out) {
  out.start = start.eval(a);
  out.end = end.eval(a);
  return out.start <= out.end && out.end <= horizon && out.start >= 0;
}

}  // namespace

std::optional<GroundedPlan> try_ground(const TaskSet& ts, const TimeAssignment& a, int horizon) {
  check_assignment(ts, a);
  GroundedPlan plan;
  plan.assignment = a;
  for (int i = 0; i < ts.n_subgoals(); ++i) {
    GroundedWindow w;
    w.source_index = i;
    if (!eval_window(ts.subgoals[i].start, ts.subgoals[i].end, a, horizon, w))
      return std::nullopt;
    plan.subgoals.push_back(w);
  }
  for (int i = 0; i < ts.n_constraints(); ++i) {
    GroundedWindow w;
    w.source_index = i;
    if (!eval_window(ts.constraints[i].start, ts.constraints[i].end, a, horizon, w))
      return std::nullopt;
    plan.constraints.push_back(w);
  }
  std::stable_sort(plan.subgoals.begin(), plan.subgoals.end(),
                   [](const GroundedWindow& x, const GroundedWindow& y) {
                     return x.start < y.start;
                   });
  return plan;
}

GroundedPlan ground(const TaskSet& ts, const TimeAssignment& a, int horizon) {
  auto plan = try_ground(ts, a, horizon);
  if (!plan)
    throw GroundError("assignment grounds a window outside [0," + std::to_string(horizon) + "]");
  return std::move(*plan);
}

TimeAssignment sample_uniform(const TaskSet& ts, int horizon, Rng& rng, int max_tries) {
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    TimeAssignment a(ts.variables.size());
    for (const TimeVariable& v : ts.variables) a[v.id] = rng.uniform_int(v.lo, v.hi);
    if (try_ground(ts, a, horizon)) return a;
  }
  throw GroundError("no feasible time assignment after " + std::to_string(max_tries) + " tries");
}

}  // namespace tgpo::decomp
