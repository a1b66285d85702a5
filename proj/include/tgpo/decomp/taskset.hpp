#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tgpo/util/rng.hpp"

namespace tgpo::decomp {

// Value per declared time variable, indexed by variable id (ids are dense,
// assigned in discovery order during decomposition).
using TimeAssignment = std::vector<int>;

// Affine time expression: constant offset plus a sum of time variables, each
// with coefficient one (one per F/U level along the nesting path).
struct TimeExpr {
  int offset = 0;
  std::vector<int> vars;

  static TimeExpr constant(int c) { return TimeExpr{c, {}}; }
  TimeExpr plus(int c) const;
  TimeExpr plus_var(int id) const;
  int eval(const TimeAssignment& a) const;
  bool operator==(const TimeExpr&) const = default;

  // Rendered like "t0+t1+5"; bare constants render as the number.
  std::string str() const;
};

// Integer domain [lo, hi] inherited from the F/U interval that introduced
// the variable.
struct TimeVariable {
  int id = 0;
  int lo = 0;
  int hi = 0;
};

enum class SubgoalKind { Reach, Stay };

// Positive-polarity timed task: be inside the region at one instant (Reach,
// start == end) or throughout a window (Stay).
struct Subgoal {
  std::string label;
  SubgoalKind kind = SubgoalKind::Reach;
  TimeExpr start;
  TimeExpr end;
};

// Avoidance window: the region `label` is forbidden for every step of
// [start, end].
struct InvariantConstraint {
  std::string label;
  TimeExpr start;
  TimeExpr end;
};

// Flattened formula: subgoals, invariant constraints, and the time variables
// their windows refer to.
struct TaskSet {
  std::vector<Subgoal> subgoals;
  std::vector<InvariantConstraint> constraints;
  std::vector<TimeVariable> variables;

  int n_subgoals() const { return static_cast<int>(subgoals.size()); }
  int n_constraints() const { return static_cast<int>(constraints.size()); }
  int n_variables() const { return static_cast<int>(variables.size()); }
};

// Concrete integer window; source_index points back into the TaskSet list
// the window was grounded from.
struct GroundedWindow {
  int start = 0;
  int end = 0;
  int source_index = 0;
};

// TaskSet under a concrete assignment. Subgoal windows are sorted ascending
// by start time, ties kept in decomposition order; constraints stay in
// decomposition order.
struct GroundedPlan {
  std::vector<GroundedWindow> subgoals;
  std::vector<GroundedWindow> constraints;
  TimeAssignment assignment;
};

// Evaluates every window and sorts. Throws GroundError when the assignment
// is missing values or leaves its domain, or when any window ends past the
// horizon T.
GroundedPlan ground(const TaskSet& ts, const TimeAssignment& a, int horizon);

// Same checks, but horizon overflow yields nullopt instead of throwing so
// samplers can retry cheaply. Domain violations still throw.
std::optional<GroundedPlan> try_ground(const TaskSet& ts, const TimeAssignment& a, int horizon);

// Independent uniform draw per variable, rejection-resampled until grounding
// succeeds. Throws GroundError when the retry budget is exhausted.
TimeAssignment sample_uniform(const TaskSet& ts, int horizon, Rng& rng, int max_tries = 1000);

}  // namespace tgpo::decomp
