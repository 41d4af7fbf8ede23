// ── stochastic.hpp ──────────────────────────────────────────────────────────
// Mass-action reaction networks and exact stochastic simulation (Gillespie
// direct method), producing grid trajectories of one observed species.
//
// The three named built-in networks are minimal canonical choices with
// every rate and initial count overridable through the JSON network format
// (see io.hpp); they are placeholders calibrated against their own
// analytic means, not published parameterizations:
//
//   immigration    0 -> X          rate 1.0,  X(0) = 0,      observe X
//   isomerization  A <-> B         rates 1.0, A(0) = 100,    observe B
//   polymerase     T -> T + P      rate 1.0,  T(0) = 10,     observe P
// ─────────────────────────────────────────────────────────────────────────────

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stlkern/trajectory.hpp"

namespace stlkern {

// Mass-action propensity: rate * product over reactant copy numbers.
// Order is the number of reactant indices (0, 1, or 2); a doubled index
// means a homodimer step with propensity rate * n * (n - 1) / 2.
struct Reaction {
    std::vector<long long> change;      // per-species stoichiometric change
    double rate = 0.0;                  // > 0
    std::vector<std::size_t> reactants; // 0..2 species indices
};

struct ReactionNetwork {
    std::vector<std::string> species;
    std::vector<long long> initial_counts;
    std::vector<Reaction> reactions;
    std::string observed_species;

    std::size_t observed_index() const;
    void validate() const;
};

struct SSAConfig {
    double t_end = 20.0;
    double grid_t0 = 0.0;
    double grid_h = 1.0;
    std::size_t grid_segments = 20;  // trajectory gets grid_segments + 1 points
    std::uint64_t seed = 0;

    void validate() const;
};

// Built-in model by name; throws std::invalid_argument on an unknown one.
ReactionNetwork builtin_model(const std::string& name);

// One exact sample path of the observed species, sampled onto the grid as
// the state after the last event at or before each grid time.  Exhausted
// propensity (total = 0) freezes the state to t_end.
Trajectory gillespie_simulate(const ReactionNetwork& net, const SSAConfig& cfg);

// `count` independent paths on the shared grid, one derived RNG stream per
// path; optionally z-normalized as a batch.
std::vector<Trajectory> sample_process(const ReactionNetwork& net,
                                       const SSAConfig& cfg, std::size_t count,
                                       bool normalize);

}  // namespace stlkern
