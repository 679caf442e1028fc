#include "stagsim/interventions.hpp"

#include <stdexcept>

namespace stagsim {

const char* intervention_kind_name(InterventionKind kind) {
    switch (kind) {
    case InterventionKind::VanillaCPI: return "vanilla_cpi";
    case InterventionKind::StableCPI: return "stable_cpi";
    }
    return "unknown";
}

InterventionKind intervention_kind_from_name(const std::string& name) {
    if (name == "vanilla_cpi") return InterventionKind::VanillaCPI;
    if (name == "stable_cpi") return InterventionKind::StableCPI;
    throw std::invalid_argument("unknown intervention kind: " + name);
}

void InterventionSpec::validate() const {
    if (!(acceptance_probability >= 0.0 && acceptance_probability <= 1.0)) {
        throw std::invalid_argument("intervention.acceptance_probability must lie in [0, 1]");
    }
}

namespace {

// Cyclist-to-cyclist proposals through cyclist middles, enumerated on the
// pre-pass graph so that additions cannot spawn new candidates mid-pass.
std::vector<std::pair<int, int>> cpi_candidates(const SimulationState& state) {
    const auto& s = state.population.strategies;
    const auto cyclist = [&](int a) { return s[a] > 0.5; };
    return two_hop_candidates(state.population.social, cyclist, cyclist);
}

struct NeighborhoodSum {
    double sum = 0.0;
    int count = 0;
};

NeighborhoodSum neighborhood_sum(const SimulationState& state, int i) {
    NeighborhoodSum ns;
    for (const PhysicalNeighbor& nb : state.population.physical.neighbors(i)) {
        ns.sum += state.population.strategies[nb.id];
        ++ns.count;
    }
    for (int j : state.population.social.neighbors(i)) {
        ns.sum += state.population.strategies[j];
        ++ns.count;
    }
    return ns;
}

} // namespace

int vanilla_cpi(SimulationState& state, double acceptance_probability, Rng& rng) {
    const auto candidates = cpi_candidates(state);
    int added = 0;
    for (const auto& [a, b] : candidates) {
        if (rng.bernoulli(acceptance_probability)) {
            state.population.social.add_edge(a, b);
            ++added;
        }
    }
    return added;
}

double stability_delta(const SimulationState& state, int i, int k, DissonanceNorm norm) {
    if (state.population.social.has_edge(i, k)) {
        throw std::invalid_argument("stability_delta: edge already present");
    }
    const auto& s = state.population.strategies;
    const NeighborhoodSum ni = neighborhood_sum(state, i);
    const NeighborhoodSum nk = neighborhood_sum(state, k);

    const double opt_i = ni.count > 0 ? ni.sum / ni.count : s[i];
    const double opt_k = nk.count > 0 ? nk.sum / nk.count : s[k];
    const double opt_i_with = (ni.sum + s[k]) / (ni.count + 1);
    const double opt_k_with = (nk.sum + s[i]) / (nk.count + 1);

    const double before = dissonance_term(s[i], opt_i, norm) + dissonance_term(s[k], opt_k, norm);
    const double after =
        dissonance_term(s[i], opt_i_with, norm) + dissonance_term(s[k], opt_k_with, norm);
    return before - after;
}

int stable_cpi(SimulationState& state, double acceptance_probability, Rng& rng,
               DissonanceNorm norm) {
    const auto candidates = cpi_candidates(state);
    int added = 0;
    for (const auto& [a, b] : candidates) {
        // Draw for every candidate so a paired vanilla run sees the same
        // acceptance sequence.
        if (!rng.bernoulli(acceptance_probability)) continue;
        if (stability_delta(state, a, b, norm) > 0.0) {
            state.population.social.add_edge(a, b);
            ++added;
        }
    }
    return added;
}

int apply_intervention(SimulationState& state, const InterventionSpec& spec,
                       const ModelParams& params, Rng& rng) {
    spec.validate();
    switch (spec.kind) {
    case InterventionKind::VanillaCPI:
        return vanilla_cpi(state, spec.acceptance_probability, rng);
    case InterventionKind::StableCPI:
        return stable_cpi(state, spec.acceptance_probability, rng, params.dissonance_norm);
    }
    throw std::logic_error("apply_intervention: unhandled kind");
}

InterventionOutcome evaluate_intervention_outcome(const SimulationState& converged,
                                                  const InterventionSpec& spec,
                                                  const ModelParams& params,
                                                  const std::vector<ShockSpec>& shocks,
                                                  std::uint64_t seed) {
    InterventionOutcome out;
    InterventionReport& report = out.report;
    report.kind = spec.kind;
    report.n = converged.population.n;

    SimulationState state = converged;
    const std::vector<double> before = state.population.strategies;
    report.cyclists_before = cyclist_count(before);
    report.stability_before = stability(state.population, before, params.dissonance_norm);
    report.energy_before = system_energy(state.population, before, params.dissonance_norm);

    Rng rng_intervene(derive_seed(seed, 1));
    report.edges_added = apply_intervention(state, spec, params, rng_intervene);

    Rng rng_settle(derive_seed(seed, 2));
    converge(state, params, rng_settle);

    const auto& after = state.population.strategies;
    report.cyclists_after = cyclist_count(after);
    report.impact = impact_score(before, after);
    report.stability_after = stability(state.population, after, params.dissonance_norm);
    report.energy_after = system_energy(state.population, after, params.dissonance_norm);

    for (std::size_t k = 0; k < shocks.size(); ++k) {
        Rng rng_shock(derive_seed(seed, 3 + k));
        const ResilienceOutcome res = measure_resilience(state, shocks[k], params, rng_shock);
        report.shocks.push_back({shocks[k], res.resilience, res.cyclists_after});
    }
    out.post_state = std::move(state);
    return out;
}

InterventionReport evaluate_intervention(const SimulationState& converged,
                                         const InterventionSpec& spec, const ModelParams& params,
                                         const std::vector<ShockSpec>& shocks,
                                         std::uint64_t seed) {
    return evaluate_intervention_outcome(converged, spec, params, shocks, seed).report;
}

} // namespace stagsim
