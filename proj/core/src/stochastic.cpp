#include "stlkern/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stlkern/rng.hpp"

namespace stlkern {

std::size_t ReactionNetwork::observed_index() const {
    for (std::size_t i = 0; i < species.size(); ++i) {
        if (species[i] == observed_species) return i;
    }
    throw std::invalid_argument("network: observed species '" + observed_species +
                                "' not declared");
}

void ReactionNetwork::validate() const {
    if (species.empty()) throw std::invalid_argument("network: no species");
    if (initial_counts.size() != species.size()) {
        throw std::invalid_argument("network: initial counts/species size mismatch");
    }
    for (long long c : initial_counts) {
        if (c < 0) throw std::invalid_argument("network: negative initial count");
    }
    if (reactions.empty()) throw std::invalid_argument("network: no reactions");
    for (const Reaction& r : reactions) {
        if (r.change.size() != species.size()) {
            throw std::invalid_argument("network: change vector size mismatch");
        }
        if (!(r.rate > 0.0) || !std::isfinite(r.rate)) {
            throw std::invalid_argument("network: rate constants must be positive");
        }
        if (r.reactants.size() > 2) {
            throw std::invalid_argument("network: mass-action order is at most 2");
        }
        for (std::size_t idx : r.reactants) {
            if (idx >= species.size()) {
                throw std::invalid_argument("network: reactant index out of range");
            }
        }
    }
    observed_index();
}

void SSAConfig::validate() const {
    if (!(grid_h > 0.0) || !std::isfinite(grid_h)) {
        throw std::invalid_argument("ssa: grid step must be positive");
    }
    const double grid_end =
        grid_t0 + grid_h * static_cast<double>(grid_segments);
    if (!(t_end >= grid_end)) {
        throw std::invalid_argument("ssa: t_end must cover the output grid");
    }
}

ReactionNetwork builtin_model(const std::string& name) {
    if (name == "immigration") {
        return ReactionNetwork{
            .species = {"X"},
            .initial_counts = {0},
            .reactions = {Reaction{.change = {1}, .rate = 1.0, .reactants = {}}},
            .observed_species = "X",
        };
    }
    if (name == "isomerization") {
        return ReactionNetwork{
            .species = {"A", "B"},
            .initial_counts = {100, 0},
            .reactions =
                {
                    Reaction{.change = {-1, 1}, .rate = 1.0, .reactants = {0}},
                    Reaction{.change = {1, -1}, .rate = 1.0, .reactants = {1}},
                },
            .observed_species = "B",
        };
    }
    if (name == "polymerase") {
        return ReactionNetwork{
            .species = {"T", "P"},
            .initial_counts = {10, 0},
            .reactions = {Reaction{.change = {0, 1}, .rate = 1.0, .reactants = {0}}},
            .observed_species = "P",
        };
    }
    throw std::invalid_argument("unknown built-in model '" + name + "'");
}

namespace {

double propensity(const Reaction& r, const std::vector<long long>& state) {
    switch (r.reactants.size()) {
        case 0:
            return r.rate;
        case 1:
            return r.rate * static_cast<double>(state[r.reactants[0]]);
        default: {
            const std::size_t i = r.reactants[0];
            const std::size_t j = r.reactants[1];
            if (i == j) {
                const double n = static_cast<double>(state[i]);
                return r.rate * n * (n - 1.0) * 0.5;
            }
            return r.rate * static_cast<double>(state[i]) *
                   static_cast<double>(state[j]);
        }
    }
}

Trajectory simulate_stream(const ReactionNetwork& net, const SSAConfig& cfg,
                           std::uint64_t stream_index) {
    const std::size_t obs = net.observed_index();
    Rng rng(derive_stream(cfg.seed, stream_index));

    std::vector<long long> state = net.initial_counts;
    std::vector<double> props(net.reactions.size());

    std::vector<double> grid(cfg.grid_segments + 1);
    std::size_t next_grid = 0;
    double t = cfg.grid_t0;

    auto record_until = [&](double event_time) {
        while (next_grid < grid.size() &&
               cfg.grid_t0 + cfg.grid_h * static_cast<double>(next_grid) <
                   event_time) {
            grid[next_grid++] = static_cast<double>(state[obs]);
        }
    };

    while (t < cfg.t_end && next_grid < grid.size()) {
        double total = 0.0;
        for (std::size_t k = 0; k < props.size(); ++k) {
            props[k] = propensity(net.reactions[k], state);
            total += props[k];
        }
        if (!std::isfinite(total)) {
            throw std::overflow_error("ssa: propensity overflow");
        }
        if (total <= 0.0) break;  // exhausted: state holds to t_end

        const double dt = -std::log(rng.next_u01_open_zero()) / total;
        const double t_next = t + dt;
        // grid points strictly before the event keep the pre-event state
        record_until(std::min(t_next, cfg.t_end));
        if (t_next > cfg.t_end) {
            t = cfg.t_end;
            break;
        }

        double pick = rng.next_u01() * total;
        std::size_t chosen = props.size() - 1;
        for (std::size_t k = 0; k < props.size(); ++k) {
            if (pick < props[k]) {
                chosen = k;
                break;
            }
            pick -= props[k];
        }
        const Reaction& r = net.reactions[chosen];
        for (std::size_t s = 0; s < state.size(); ++s) state[s] += r.change[s];
        t = t_next;
    }
    // grid times at or after the final state change (or exhaustion)
    while (next_grid < grid.size()) {
        grid[next_grid++] = static_cast<double>(state[obs]);
    }
    return Trajectory(cfg.grid_t0, cfg.grid_h, std::move(grid));
}

}  // namespace

Trajectory gillespie_simulate(const ReactionNetwork& net, const SSAConfig& cfg) {
    net.validate();
    cfg.validate();
    return simulate_stream(net, cfg, 0);
}

std::vector<Trajectory> sample_process(const ReactionNetwork& net,
                                       const SSAConfig& cfg, std::size_t count,
                                       bool normalize) {
    net.validate();
    cfg.validate();
    if (count == 0) {
        throw std::invalid_argument("sample_process: count must be >= 1");
    }
    std::vector<Trajectory> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(simulate_stream(net, cfg, i));
    }
    return normalize ? znormalize(out) : out;
}

}  // namespace stlkern
