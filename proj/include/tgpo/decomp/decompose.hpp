#pragma once

#include "tgpo/decomp/taskset.hpp"
#include "tgpo/stl/formula.hpp"

namespace tgpo::decomp {

// Flattens a formula into timed subgoals and invariant constraints. The
// supported fragment: conjunctions, F, G, U over predicates or negated
// predicates, with arbitrary F nesting; G may wrap predicates, conjunctions
// of them, or another G (windows add), but not F/U. Disjunction is rejected.
// Each F/U introduces one fresh time variable whose domain is its interval.
TaskSet decompose(const stl::Formula& f);

}  // namespace tgpo::decomp
