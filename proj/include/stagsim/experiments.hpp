// Config-driven experiment pipelines: the 25-configuration
// stability-resilience correlation study (H1) and the paired comparison of
// the two connect-people interventions (H2).
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "stagsim/config.hpp"
#include "stagsim/dynamics.hpp"
#include "stagsim/interventions.hpp"
#include "stagsim/metrics.hpp"
#include "stagsim/shocks.hpp"

namespace stagsim {

// Seed streams, all derived from (base_seed, stream): population build and
// initial convergence per config, then one stream per shock or pairing
// stage. Streams are spaced so pipelines cannot collide.
namespace seed_stream {
constexpr std::uint64_t kBuild = 0;
constexpr std::uint64_t kConverge = 1;
constexpr std::uint64_t kShockBase = 2;   // + shock index
constexpr std::uint64_t kH2Build = 100;
constexpr std::uint64_t kH2Converge = 101;
constexpr std::uint64_t kH2Intervene = 200; // shared by both interventions (paired)
constexpr std::uint64_t kH2PerturbR1 = 300; // + replication index
constexpr std::uint64_t kH2PerturbR2 = 400; // + replication index
} // namespace seed_stream

struct H1Record {
    int config_index = 0;
    std::uint64_t seed = 0;
    double stability = 0.0;
    ShockKind shock = ShockKind::AttackHubs;
    double resilience = 0.0;
};

struct H1Fit {
    ShockKind shock = ShockKind::AttackHubs;
    std::optional<FitResult> fit;
};

struct H1Result {
    std::vector<H1Record> records; // one row per (config, shock), config-major
    std::vector<H1Fit> fits;       // one per shock, in config order
};

// Builds and converges one population per configuration, measures resilience
// to every configured shock from independent copies of the converged state,
// and fits resilience against stability per shock. Configs may run on
// several threads; results are ordered by config index regardless.
H1Result run_h1(const ExperimentConfig& config);

struct H2Table3Row {
    InterventionKind kind = InterventionKind::VanillaCPI;
    int n = 0;
    int cyclists_before = 0;
    int cyclists_after = 0;
    std::optional<double> impact;
    int cyclists_after_attack = 0;
    double resilience_t1 = 1.0;
    int edges_added = 0;
    double stability_before = 0.0;
    double stability_after = 0.0;
};

struct H2Table4Row {
    int simulation = 0; // 1-based; 0 marks the average row
    double r1_vanilla = 0.0;
    double r1_stable = 0.0;
    double r2_vanilla = 0.0;
    double r2_stable = 0.0;
};

struct H2Result {
    std::vector<H2Table3Row> table3;
    std::vector<H2Table4Row> table4; // replications followed by the average row
};

// One converged initial state; both interventions evaluated on identical
// copies with identical stage seeds; hub attack scored per intervention and
// the two random perturbations replicated with paired seeds.
H2Result run_h2(const ExperimentConfig& config);

// Output writers; CSV schemas are stable and documented in the README.
// Returns the list of files written.
std::vector<std::filesystem::path> write_h1_outputs(const H1Result& result,
                                                    const ExperimentConfig& config);
std::vector<std::filesystem::path> write_h2_outputs(const H2Result& result,
                                                    const ExperimentConfig& config);
std::vector<std::filesystem::path> write_trace_outputs(const SimulationTrace& trace,
                                                       const ExperimentConfig& config);

} // namespace stagsim
