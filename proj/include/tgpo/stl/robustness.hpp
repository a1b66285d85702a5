#pragma once

#include "tgpo/stl/formula.hpp"
#include "tgpo/stl/region.hpp"
#include "tgpo/stl/trajectory.hpp"

namespace tgpo::stl {

// Quantitative semantics over integer time steps. Temporal windows are
// clipped to [0, T] where T is the last trajectory index; querying a point
// whose effective window is empty (directly or through a subformula) throws
// MonitorError. Predicates resolve through the region map; disjunction is
// supported here even though the planner rejects it.
double robustness(const Trajectory& sigma, int t, const Formula& f, const RegionMap& regions);

// True iff robustness(sigma, 0, f) >= 0.
bool satisfies(const Trajectory& sigma, const Formula& f, const RegionMap& regions);

}  // namespace tgpo::stl
