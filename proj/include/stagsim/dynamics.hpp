// Per-epoch stag-hunt games with distance-attenuated payoffs and mixed
// conformity/utility belief revision until convergence.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "stagsim/metrics.hpp"
#include "stagsim/population.hpp"
#include "stagsim/rng.hpp"

namespace stagsim {

enum class Action { Cooperate, Defect }; // Cooperate = cycle, Defect = car

struct PayoffPair {
    double row = 0.0;
    double col = 0.0;
};

// Row player first.
struct PayoffMatrix {
    PayoffPair cc{3.0, 3.0};
    PayoffPair cd{0.0, 2.0};
    PayoffPair dc{2.0, 0.0};
    PayoffPair dd{2.0, 2.0};

    const PayoffPair& at(Action row, Action col) const {
        if (row == Action::Cooperate) return col == Action::Cooperate ? cc : cd;
        return col == Action::Cooperate ? dc : dd;
    }
    // Coordination structure with two pure equilibria: cooperating against a
    // cooperator beats defecting, defecting against a defector beats
    // cooperating.
    bool is_stag_hunt() const { return cc.row > dc.row && dd.row > cd.row; }
};

// Sampled mode plays one realized action pair per physical edge per epoch;
// expected mode accrues probability-weighted payoffs without draws.
enum class PayoffMode { Sampled, Expected };

// Whether "best-performing neighbour" compares this epoch's payoffs only or
// totals accumulated since the start of the run.
enum class PayoffAccumulation { PerEpoch, WithinRun };

struct ModelParams {
    double conformity_probability = 0.7; // chance a revision conforms rather than imitates
    double payoff_attenuation = 0.8;     // payoff decay base per unit distance
    double learning_rate = 0.01;
    PayoffMatrix payoff;
    int max_epochs = 1500;
    int quiet_epochs = 20;
    double revision_epsilon = 1e-4; // a move larger than this counts as a revision
    PayoffMode payoff_mode = PayoffMode::Sampled;
    PayoffAccumulation payoff_accumulation = PayoffAccumulation::PerEpoch;
    DissonanceNorm dissonance_norm = DissonanceNorm::SquaredDiff;

    void validate() const; // throws std::invalid_argument
};

struct SimulationState {
    Population population;
    int epoch = 0;
    std::vector<double> epoch_payoff; // zeroed at the start of every epoch
    int quiet_streak = 0;

    // Per-edge attenuation cache, rebuilt lazily when the base changes.
    std::vector<double> pair_attenuation;
    double attenuation_base = -1.0;
};

SimulationState make_state(Population pop);

Action sample_action(double strategy, Rng& rng);

double attenuated_payoff(double raw, double distance, double attenuation_base);

// One game per unordered physical pair; both sides receive their matrix
// payoff scaled by the same distance attenuation.
void play_epoch(SimulationState& state, const ModelParams& params, Rng& rng);

double conformity_update(double s, double s_opt, double learning_rate);

// Step towards the strategy of the best-performing physical neighbour this
// epoch (ties to the lowest id, self excluded). Neighbourless agents stay put.
double utility_update(int i, const SimulationState& state, double learning_rate);

// Synchronous revision: all reads see the epoch-t strategy vector. draws[i]
// picks conformity (u < conformity_probability) or utility for agent i.
// Returns how many agents moved by more than revision_epsilon.
int revise_beliefs_with_draws(SimulationState& state, const ModelParams& params,
                              std::span<const double> draws);
int revise_beliefs(SimulationState& state, const ModelParams& params, Rng& rng);

struct TraceRow {
    int epoch;
    int cyclists;
    double energy;
    double stability;
    int revised;
};

struct SimulationTrace {
    std::vector<TraceRow> rows;
    bool converged = false;
    int final_epoch = 0;
};

// Repeats {play_epoch, revise_beliefs} until no agent revises for
// quiet_epochs consecutive epochs or max_epochs is reached. Resets the
// state's epoch counter, so re-running a shocked copy starts fresh.
SimulationTrace converge(SimulationState& state, const ModelParams& params, Rng& rng);

std::pair<SimulationState, SimulationTrace> run_to_convergence(Population pop,
                                                               const ModelParams& params,
                                                               Rng& rng);

} // namespace stagsim
