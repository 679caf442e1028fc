#include "stagsim/shocks.hpp"

#include <stdexcept>

namespace stagsim {

const char* shock_kind_name(ShockKind kind) {
    switch (kind) {
    case ShockKind::AttackHubs: return "attack_hubs";
    case ShockKind::ConnectDefectors: return "connect_defectors";
    case ShockKind::ConnectionBreaks: return "connection_breaks";
    case ShockKind::AgentsDropOut: return "agents_drop_out";
    }
    return "unknown";
}

ShockKind shock_kind_from_name(const std::string& name) {
    if (name == "attack_hubs") return ShockKind::AttackHubs;
    if (name == "connect_defectors") return ShockKind::ConnectDefectors;
    if (name == "connection_breaks") return ShockKind::ConnectionBreaks;
    if (name == "agents_drop_out") return ShockKind::AgentsDropOut;
    throw std::invalid_argument("unknown shock kind: " + name);
}

void ShockSpec::validate(int n) const {
    switch (kind) {
    case ShockKind::AttackHubs:
        if (attack_magnitude < 0 || attack_magnitude > n) {
            throw std::invalid_argument("shock.attack_magnitude must lie in [0, n]");
        }
        if (!(new_strategy >= 0.0 && new_strategy <= 1.0)) {
            throw std::invalid_argument("shock.new_strategy must lie in [0, 1]");
        }
        break;
    case ShockKind::ConnectDefectors:
        if (!(acceptance_probability >= 0.0 && acceptance_probability <= 1.0)) {
            throw std::invalid_argument("shock.acceptance_probability must lie in [0, 1]");
        }
        break;
    case ShockKind::ConnectionBreaks:
    case ShockKind::AgentsDropOut:
        if (!(perturbation_magnitude >= 0.0 && perturbation_magnitude <= 1.0)) {
            throw std::invalid_argument("shock.perturbation_magnitude must lie in [0, 1]");
        }
        break;
    }
}

std::string ShockSpec::describe() const {
    switch (kind) {
    case ShockKind::AttackHubs:
        return std::string(shock_kind_name(kind)) + " magnitude=" +
               std::to_string(attack_magnitude) + " new_strategy=" + std::to_string(new_strategy);
    case ShockKind::ConnectDefectors:
        return std::string(shock_kind_name(kind)) +
               " acceptance_probability=" + std::to_string(acceptance_probability);
    case ShockKind::ConnectionBreaks:
    case ShockKind::AgentsDropOut:
        return std::string(shock_kind_name(kind)) +
               " perturbation_magnitude=" + std::to_string(perturbation_magnitude);
    }
    return shock_kind_name(kind);
}

void attack_hubs(SimulationState& state, int magnitude, double new_strategy) {
    const int n = state.population.n;
    if (magnitude < 0 || magnitude > n) {
        throw std::invalid_argument("attack_hubs: magnitude must lie in [0, n]");
    }
    if (!(new_strategy >= 0.0 && new_strategy <= 1.0)) {
        throw std::invalid_argument("attack_hubs: new_strategy must lie in [0, 1]");
    }
    const std::vector<int> ranked = rank_by_hub_score(state.population.social);
    for (int r = 0; r < magnitude; ++r) {
        state.population.strategies[ranked[r]] = new_strategy;
    }
}

int connect_defectors(SimulationState& state, double acceptance_probability, Rng& rng) {
    const auto& s = state.population.strategies;
    const auto candidates =
        two_hop_candidates(state.population.social, [&](int a) { return s[a] < 0.5; },
                           [](int) { return true; });
    int added = 0;
    for (const auto& [a, b] : candidates) {
        if (rng.bernoulli(acceptance_probability)) {
            state.population.social.add_edge(a, b);
            ++added;
        }
    }
    return added;
}

int break_connections(SimulationState& state, double perturbation_magnitude, Rng& rng) {
    const auto edges = state.population.social.edges();
    int removed = 0;
    for (const auto& [a, b] : edges) {
        if (rng.bernoulli(perturbation_magnitude)) {
            state.population.social.remove_edge(a, b);
            ++removed;
        }
    }
    return removed;
}

int drop_agents(SimulationState& state, double perturbation_magnitude, Rng& rng) {
    int dropped = 0;
    for (int i = 0; i < state.population.n; ++i) {
        if (rng.bernoulli(perturbation_magnitude)) {
            state.population.social.remove_incident(i);
            ++dropped;
        }
    }
    return dropped;
}

void apply_shock(SimulationState& state, const ShockSpec& spec, Rng& rng) {
    spec.validate(state.population.n);
    switch (spec.kind) {
    case ShockKind::AttackHubs:
        attack_hubs(state, spec.attack_magnitude, spec.new_strategy);
        break;
    case ShockKind::ConnectDefectors:
        connect_defectors(state, spec.acceptance_probability, rng);
        break;
    case ShockKind::ConnectionBreaks:
        break_connections(state, spec.perturbation_magnitude, rng);
        break;
    case ShockKind::AgentsDropOut:
        drop_agents(state, spec.perturbation_magnitude, rng);
        break;
    }
}

ResilienceOutcome measure_resilience(const SimulationState& converged, const ShockSpec& spec,
                                     const ModelParams& params, Rng& rng) {
    ResilienceOutcome out;
    SimulationState post = converged;
    const std::vector<double> before = post.population.strategies;
    out.cyclists_before = cyclist_count(before);

    apply_shock(post, spec, rng);
    out.post_trace = converge(post, params, rng);

    out.resilience = resilience_score(before, post.population.strategies);
    out.cyclists_after = cyclist_count(post.population.strategies);
    out.post_state = std::move(post);
    return out;
}

} // namespace stagsim
