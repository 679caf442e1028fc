// Connect-people interventions: the vanilla variant links like-minded
// cyclists within two hops; the stable variant additionally requires that a
// proposed edge lowers the endpoints' deviation from their optima.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stagsim/shocks.hpp"

namespace stagsim {

enum class InterventionKind { VanillaCPI, StableCPI };

const char* intervention_kind_name(InterventionKind kind);
InterventionKind intervention_kind_from_name(const std::string& name);

struct InterventionSpec {
    InterventionKind kind = InterventionKind::VanillaCPI;
    double acceptance_probability = 0.15;

    void validate() const;
};

// Returns the number of edges added.
int vanilla_cpi(SimulationState& state, double acceptance_probability, Rng& rng);

// Drop in the endpoints' summed deviation from their optimal strategies if
// the social edge (i, k) were added: positive means the edge helps. The two
// optima are recomputed with the hypothetical edge in place; nothing else
// moves. Throws if the edge already exists.
double stability_delta(const SimulationState& state, int i, int k,
                       DissonanceNorm norm = DissonanceNorm::SquaredDiff);

// Same candidate enumeration and acceptance draws as vanilla_cpi, but an
// accepted edge also needs stability_delta > 0, evaluated against the state
// as mutated by earlier accepted edges in the same pass.
int stable_cpi(SimulationState& state, double acceptance_probability, Rng& rng,
               DissonanceNorm norm = DissonanceNorm::SquaredDiff);

int apply_intervention(SimulationState& state, const InterventionSpec& spec,
                       const ModelParams& params, Rng& rng);

struct ShockResult {
    ShockSpec spec;
    double resilience = 1.0;
    int cyclists_after_shock = 0;
};

struct InterventionReport {
    InterventionKind kind = InterventionKind::VanillaCPI;
    int n = 0;
    int cyclists_before = 0;
    int cyclists_after = 0;
    std::optional<double> impact;
    int edges_added = 0;
    double stability_before = 0.0;
    double stability_after = 0.0;
    double energy_before = 0.0;
    double energy_after = 0.0;
    std::vector<ShockResult> shocks;
};

// Pipeline applied to an already converged state: snapshot, intervene,
// re-converge, score impact, then measure resilience to each shock from an
// independent copy of the post-intervention state. Stage generators are
// derived from the seed, so two interventions evaluated with the same seed
// see identical draws wherever their work coincides.
InterventionReport evaluate_intervention(const SimulationState& converged,
                                         const InterventionSpec& spec, const ModelParams& params,
                                         const std::vector<ShockSpec>& shocks,
                                         std::uint64_t seed);

// Same pipeline, plus the post-intervention converged state for further use.
struct InterventionOutcome {
    InterventionReport report;
    SimulationState post_state;
};

InterventionOutcome evaluate_intervention_outcome(const SimulationState& converged,
                                                  const InterventionSpec& spec,
                                                  const ModelParams& params,
                                                  const std::vector<ShockSpec>& shocks,
                                                  std::uint64_t seed);

} // namespace stagsim
