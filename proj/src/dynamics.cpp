#include "stagsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stagsim {

void ModelParams::validate() const {
    if (!(conformity_probability > 0.5 && conformity_probability <= 1.0)) {
        throw std::invalid_argument(
            "model.conformity_probability must lie in (0.5, 1] for a conforming population");
    }
    if (!(payoff_attenuation >= 0.0 && payoff_attenuation <= 1.0)) {
        throw std::invalid_argument("model.payoff_attenuation must lie in [0, 1]");
    }
    if (learning_rate <= 0.0) throw std::invalid_argument("model.learning_rate must be > 0");
    if (max_epochs < 1) throw std::invalid_argument("model.max_epochs must be >= 1");
    if (quiet_epochs < 1) throw std::invalid_argument("model.quiet_epochs must be >= 1");
    if (revision_epsilon < 0.0) {
        throw std::invalid_argument("model.revision_epsilon must be >= 0");
    }
    if (!payoff.is_stag_hunt()) {
        throw std::invalid_argument("model.payoff_matrix must keep the stag-hunt ordering");
    }
}

SimulationState make_state(Population pop) {
    SimulationState state;
    state.epoch_payoff.assign(pop.n, 0.0);
    state.population = std::move(pop);
    return state;
}

Action sample_action(double strategy, Rng& rng) {
    return rng.uniform01() < strategy ? Action::Cooperate : Action::Defect;
}

double attenuated_payoff(double raw, double distance, double attenuation_base) {
    return raw * std::pow(attenuation_base, distance);
}

namespace {

void refresh_attenuation_cache(SimulationState& state, const ModelParams& params) {
    if (state.attenuation_base == params.payoff_attenuation &&
        state.pair_attenuation.size() == state.population.physical.edges().size()) {
        return;
    }
    const auto& edges = state.population.physical.edges();
    state.pair_attenuation.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        state.pair_attenuation[e] = std::pow(params.payoff_attenuation, edges[e].distance);
    }
    state.attenuation_base = params.payoff_attenuation;
}

} // namespace

void play_epoch(SimulationState& state, const ModelParams& params, Rng& rng) {
    refresh_attenuation_cache(state, params);
    if (params.payoff_accumulation == PayoffAccumulation::PerEpoch || state.epoch <= 1) {
        std::fill(state.epoch_payoff.begin(), state.epoch_payoff.end(), 0.0);
    }
    const auto& edges = state.population.physical.edges();
    const auto& s = state.population.strategies;
    const PayoffMatrix& m = params.payoff;

    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& edge = edges[e];
        const double scale = state.pair_attenuation[e];
        if (params.payoff_mode == PayoffMode::Sampled) {
            const Action a = sample_action(s[edge.a], rng);
            const Action b = sample_action(s[edge.b], rng);
            const PayoffPair& p = m.at(a, b);
            state.epoch_payoff[edge.a] += p.row * scale;
            state.epoch_payoff[edge.b] += p.col * scale;
        } else {
            const double pa = s[edge.a], pb = s[edge.b];
            const double w_cc = pa * pb, w_cd = pa * (1.0 - pb);
            const double w_dc = (1.0 - pa) * pb, w_dd = (1.0 - pa) * (1.0 - pb);
            state.epoch_payoff[edge.a] +=
                (w_cc * m.cc.row + w_cd * m.cd.row + w_dc * m.dc.row + w_dd * m.dd.row) * scale;
            state.epoch_payoff[edge.b] +=
                (w_cc * m.cc.col + w_cd * m.cd.col + w_dc * m.dc.col + w_dd * m.dd.col) * scale;
        }
    }
}

double conformity_update(double s, double s_opt, double learning_rate) {
    return std::clamp(s + learning_rate * (s_opt - s), 0.0, 1.0);
}

double utility_update(int i, const SimulationState& state, double learning_rate) {
    const auto& neighbors = state.population.physical.neighbors(i);
    const auto& s = state.population.strategies;
    if (neighbors.empty()) return s[i];
    int best = -1;
    double best_payoff = 0.0;
    for (const PhysicalNeighbor& nb : neighbors) { // ascending id, so ties keep the lowest
        if (best < 0 || state.epoch_payoff[nb.id] > best_payoff) {
            best = nb.id;
            best_payoff = state.epoch_payoff[nb.id];
        }
    }
    return std::clamp(s[i] + learning_rate * (s[best] - s[i]), 0.0, 1.0);
}

int revise_beliefs_with_draws(SimulationState& state, const ModelParams& params,
                              std::span<const double> draws) {
    const int n = state.population.n;
    if (static_cast<int>(draws.size()) != n) {
        throw std::invalid_argument("revise_beliefs_with_draws: one draw per agent required");
    }
    const auto& s = state.population.strategies;
    std::vector<double> next(n);
    int revised = 0;
    for (int i = 0; i < n; ++i) {
        if (draws[i] < params.conformity_probability) {
            const double target = optimal_strategy(i, state.population, s);
            next[i] = conformity_update(s[i], target, params.learning_rate);
        } else {
            next[i] = utility_update(i, state, params.learning_rate);
        }
        if (std::abs(next[i] - s[i]) > params.revision_epsilon) ++revised;
    }
    state.population.strategies = std::move(next);
    return revised;
}

int revise_beliefs(SimulationState& state, const ModelParams& params, Rng& rng) {
    std::vector<double> draws(state.population.n);
    for (double& d : draws) d = rng.uniform01();
    return revise_beliefs_with_draws(state, params, draws);
}

SimulationTrace converge(SimulationState& state, const ModelParams& params, Rng& rng) {
    params.validate();
    state.epoch = 0;
    state.quiet_streak = 0;

    SimulationTrace trace;
    for (;;) {
        ++state.epoch;
        play_epoch(state, params, rng);
        const int revised = revise_beliefs(state, params, rng);
        state.quiet_streak = revised == 0 ? state.quiet_streak + 1 : 0;

        const auto& s = state.population.strategies;
        trace.rows.push_back({state.epoch, cyclist_count(s),
                              system_energy(state.population, s, params.dissonance_norm),
                              stability(state.population, s, params.dissonance_norm), revised});

        if (state.quiet_streak >= params.quiet_epochs) {
            trace.converged = true;
            break;
        }
        if (state.epoch >= params.max_epochs) break;
    }
    trace.final_epoch = state.epoch;
    return trace;
}

std::pair<SimulationState, SimulationTrace> run_to_convergence(Population pop,
                                                               const ModelParams& params,
                                                               Rng& rng) {
    SimulationState state = make_state(std::move(pop));
    SimulationTrace trace = converge(state, params, rng);
    return {std::move(state), std::move(trace)};
}

} // namespace stagsim
