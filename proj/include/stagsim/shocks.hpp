// Targeted attacks, random perturbations and the resilience-measurement
// protocol (snapshot, shock, re-converge, compare).
#pragma once

#include <string>
#include <vector>

#include "stagsim/dynamics.hpp"

namespace stagsim {

enum class ShockKind { AttackHubs, ConnectDefectors, ConnectionBreaks, AgentsDropOut };

const char* shock_kind_name(ShockKind kind);
ShockKind shock_kind_from_name(const std::string& name);

struct ShockSpec {
    ShockKind kind = ShockKind::AttackHubs;
    int attack_magnitude = 30;             // AttackHubs: how many top hubs
    double new_strategy = 0.3;             // AttackHubs: forced strategy
    double acceptance_probability = 0.15;  // ConnectDefectors
    double perturbation_magnitude = 0.1;   // ConnectionBreaks / AgentsDropOut

    void validate(int n) const; // throws std::invalid_argument
    std::string describe() const;
};

// Forces the strategies of the top `magnitude` agents by hub score. The
// attacked agents keep revising beliefs afterwards; networks are untouched.
void attack_hubs(SimulationState& state, int magnitude, double new_strategy);

// Proposes a social edge between every two-hop pair of defectors
// (s < 0.5 at both endpoints, any middle) once per unordered pair.
// Returns the number of edges added.
int connect_defectors(SimulationState& state, double acceptance_probability, Rng& rng);

// Removes each social edge independently with the given probability.
int break_connections(SimulationState& state, double perturbation_magnitude, Rng& rng);

// Selects each agent independently and strips all its social edges; the
// agent keeps its strategy and physical neighbours.
int drop_agents(SimulationState& state, double perturbation_magnitude, Rng& rng);

void apply_shock(SimulationState& state, const ShockSpec& spec, Rng& rng);

struct ResilienceOutcome {
    double resilience = 1.0;
    int cyclists_before = 0;
    int cyclists_after = 0;
    SimulationState post_state;
    SimulationTrace post_trace;
};

// Snapshot the converged strategies, apply the shock, re-run to convergence
// and score the displacement. Every agent, attacked or not, contributes.
ResilienceOutcome measure_resilience(const SimulationState& converged, const ShockSpec& spec,
                                     const ModelParams& params, Rng& rng);

// Unordered two-hop pairs (i, k) of the social graph with eligible endpoints
// and at least one eligible middle, skipping existing edges. Evaluated
// against the graph as passed (callers snapshot before mutating); ordered by
// first encounter while scanning i, then j, then k ascending.
template <typename EndpointOk, typename MiddleOk>
std::vector<std::pair<int, int>> two_hop_candidates(const SocialNetwork& g,
                                                    EndpointOk endpoint_ok, MiddleOk middle_ok) {
    std::vector<std::pair<int, int>> out;
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < g.size(); ++i) {
        if (!endpoint_ok(i)) continue;
        for (int j : g.neighbors(i)) {
            if (!middle_ok(j)) continue;
            for (int k : g.neighbors(j)) {
                if (k == i || !endpoint_ok(k)) continue;
                const auto key = std::minmax(i, k);
                if (g.has_edge(key.first, key.second)) continue;
                if (!seen.insert(key).second) continue;
                out.push_back(key);
            }
        }
    }
    return out;
}

} // namespace stagsim
