// ── robustness.hpp ──────────────────────────────────────────────────────────
// Boolean and quantitative monitors over gridded trajectories.
//
// Temporal operators quantify over grid points only.  A window [lo, hi]
// at grid index t selects the indices t' >= t with (t' - t) * h in
// [lo, hi], intersected with the remaining trace; operators without a
// window range over the whole suffix [t, end].  An empty selection gives
// the neutral element over the extended reals: -inf for Eventually/Until
// (sup of nothing), +inf for Globally (inf of nothing); the Boolean
// monitor mirrors this with false / true.
//
// Monitor values are extended reals: `true` scores +inf, `not true`
// scores -inf, everything else is finite on finite trajectories.
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstddef>
#include <vector>

#include "stlkern/formula.hpp"
#include "stlkern/trajectory.hpp"

namespace stlkern {

// Robustness of f on xi at grid index t_index.  Positive means satisfied
// with margin, negative violated; sign agrees with boolean_sat whenever
// the value is nonzero.  Throws std::out_of_range on a bad index.
double robustness(const Formula& f, const Trajectory& xi, std::size_t t_index);

bool boolean_sat(const Formula& f, const Trajectory& xi, std::size_t t_index);

// Robustness at every grid index.  result[i] == robustness(f, xi, i)
// exactly; both entry points share one evaluation path.
std::vector<double> robustness_signal(const Formula& f, const Trajectory& xi);

std::vector<char> boolean_signal(const Formula& f, const Trajectory& xi);

}  // namespace stlkern
