// Command-line harness: single runs, the H1 and H2 studies, and one-off
// shocks or interventions against saved states.
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stagsim/config.hpp"
#include "stagsim/csv.hpp"
#include "stagsim/experiments.hpp"
#include "stagsim/serialize.hpp"

namespace {

using namespace stagsim;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format = "csv";
    int threads = 1;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts, bool with_threads = false) {
    cmd->add_option("--config", opts.config_path, "JSON experiment configuration");
    cmd->add_option("--seed", opts.seed, "override the configured base seed");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--format", opts.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_threads) {
        cmd->add_option("--threads", opts.threads, "worker threads for independent runs")
            ->check(CLI::PositiveNumber);
    }
}

ExperimentConfig resolve_config(const CommonOptions& opts) {
    ExperimentConfig config =
        opts.config_path.empty() ? default_config() : load_config_file(opts.config_path);
    if (opts.seed) config.base_seed = *opts.seed;
    if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
    config.format = opts.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    config.threads = opts.threads;
    config.validate();
    return config;
}

int cmd_simulate(const CommonOptions& opts, const std::string& save_state) {
    const ExperimentConfig config = resolve_config(opts);
    Population pop =
        build_population(config.population, derive_seed(config.base_seed, seed_stream::kBuild));
    Rng rng(derive_seed(config.base_seed, seed_stream::kConverge));
    auto [state, trace] = run_to_convergence(std::move(pop), config.model, rng);

    for (const auto& path : write_trace_outputs(trace, config)) {
        std::cout << "wrote " << path.string() << "\n";
    }
    if (!save_state.empty()) {
        save_population(save_state, state.population, config.population, config.base_seed);
        std::cout << "wrote " << save_state << "\n";
    }
    const auto& s = state.population.strategies;
    std::cout << "epochs=" << trace.final_epoch << " converged=" << (trace.converged ? "yes" : "no")
              << " cyclists=" << cyclist_count(s) << "/" << state.population.n
              << " stability=" << format_double(stability(state.population, s,
                                                          config.model.dissonance_norm))
              << " energy=" << format_double(system_energy(state.population, s,
                                                           config.model.dissonance_norm))
              << "\n";
    return 0;
}

int cmd_h1(const CommonOptions& opts) {
    const ExperimentConfig config = resolve_config(opts);
    const H1Result result = run_h1(config);
    for (const auto& path : write_h1_outputs(result, config)) {
        std::cout << "wrote " << path.string() << "\n";
    }
    for (const H1Fit& f : result.fits) {
        std::cout << shock_kind_name(f.shock) << ": ";
        if (f.fit) {
            std::cout << "slope=" << format_double(f.fit->slope)
                      << " r_squared=" << format_double(f.fit->r_squared) << "\n";
        } else {
            std::cout << "degenerate fit\n";
        }
    }
    return 0;
}

int cmd_h2(const CommonOptions& opts) {
    const ExperimentConfig config = resolve_config(opts);
    const H2Result result = run_h2(config);
    for (const auto& path : write_h2_outputs(result, config)) {
        std::cout << "wrote " << path.string() << "\n";
    }
    for (const H2Table3Row& row : result.table3) {
        std::cout << intervention_kind_name(row.kind) << ": impact="
                  << (row.impact ? format_double(*row.impact) : "NA")
                  << " resilience_T1=" << format_double(row.resilience_t1) << "\n";
    }
    return 0;
}

ShockSpec shock_spec_from_cli(const std::string& kind, std::optional<int> magnitude,
                              std::optional<double> new_strategy,
                              std::optional<double> probability) {
    ShockSpec spec;
    spec.kind = shock_kind_from_name(kind);
    if (magnitude) spec.attack_magnitude = *magnitude;
    if (new_strategy) spec.new_strategy = *new_strategy;
    if (probability) {
        spec.acceptance_probability = *probability;
        spec.perturbation_magnitude = *probability;
    }
    return spec;
}

int cmd_shock(const CommonOptions& opts, const std::string& state_path, const std::string& kind,
              std::optional<int> magnitude, std::optional<double> new_strategy,
              std::optional<double> probability) {
    const ExperimentConfig config = resolve_config(opts);
    const PopulationDocument doc = load_population(state_path);
    const ShockSpec spec = shock_spec_from_cli(kind, magnitude, new_strategy, probability);
    spec.validate(doc.population.n);

    SimulationState state = make_state(doc.population);
    Rng rng(derive_seed(config.base_seed, seed_stream::kShockBase));
    const ResilienceOutcome outcome = measure_resilience(state, spec, config.model, rng);

    const std::filesystem::path dir(config.output_dir);
    std::string log = join_csv({"kind", "params", "resilience", "cyclists_before",
                                "cyclists_after"});
    log += join_csv({shock_kind_name(spec.kind), spec.describe(),
                     format_double(outcome.resilience), std::to_string(outcome.cyclists_before),
                     std::to_string(outcome.cyclists_after)});
    write_text_file(dir / "shock_log.csv", log);
    save_population(dir / "post_state.json", outcome.post_state.population, doc.params, doc.seed);
    std::cout << "wrote " << (dir / "shock_log.csv").string() << "\n";
    std::cout << "wrote " << (dir / "post_state.json").string() << "\n";
    std::cout << "resilience=" << format_double(outcome.resilience) << "\n";
    return 0;
}

int cmd_intervene(const CommonOptions& opts, const std::string& state_path,
                  const std::string& kind, std::optional<double> probability) {
    const ExperimentConfig config = resolve_config(opts);
    const PopulationDocument doc = load_population(state_path);

    InterventionSpec spec;
    spec.kind = intervention_kind_from_name(kind);
    if (probability) spec.acceptance_probability = *probability;
    spec.validate();

    SimulationState state = make_state(doc.population);
    const InterventionOutcome outcome = evaluate_intervention_outcome(
        state, spec, config.model, {}, derive_seed(config.base_seed, seed_stream::kH2Intervene));

    const InterventionReport& r = outcome.report;
    const std::filesystem::path dir(config.output_dir);
    std::string report = join_csv({"intervention", "cyclists_before", "cyclists_after", "impact",
                                   "edges_added", "stability_before", "stability_after"});
    report += join_csv({intervention_kind_name(r.kind), std::to_string(r.cyclists_before),
                        std::to_string(r.cyclists_after),
                        r.impact ? format_double(*r.impact) : "NA",
                        std::to_string(r.edges_added), format_double(r.stability_before),
                        format_double(r.stability_after)});
    write_text_file(dir / "intervention_report.csv", report);
    save_population(dir / "post_state.json", outcome.post_state.population, doc.params, doc.seed);
    std::cout << "wrote " << (dir / "intervention_report.csv").string() << "\n";
    std::cout << "wrote " << (dir / "post_state.json").string() << "\n";
    std::cout << "impact=" << (r.impact ? format_double(*r.impact) : "NA")
              << " edges_added=" << r.edges_added << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stagsim: dual-layer commuter coordination simulator"};
    app.require_subcommand(1);

    CommonOptions opts;

    auto* simulate = app.add_subcommand("simulate", "run one seeded simulation to convergence");
    std::string save_state;
    add_common_options(simulate, opts);
    simulate->add_option("--save-state", save_state, "save the converged population as JSON");

    auto* h1 = app.add_subcommand("h1", "stability vs resilience across many configurations");
    add_common_options(h1, opts, /*with_threads=*/true);

    auto* h2 = app.add_subcommand("h2", "paired comparison of the two interventions");
    add_common_options(h2, opts);

    auto* shock = app.add_subcommand("shock", "apply one shock to a saved state");
    std::string state_path, shock_kind;
    std::optional<int> magnitude;
    std::optional<double> new_strategy, probability;
    add_common_options(shock, opts);
    shock->add_option("--state", state_path, "saved population JSON")->required();
    shock->add_option("--kind", shock_kind,
                      "attack_hubs | connect_defectors | connection_breaks | agents_drop_out")
        ->required();
    shock->add_option("--magnitude", magnitude, "hubs to attack (attack_hubs)");
    shock->add_option("--new-strategy", new_strategy, "forced strategy (attack_hubs)");
    shock->add_option("--probability", probability, "acceptance or perturbation probability");

    auto* intervene = app.add_subcommand("intervene", "apply one intervention to a saved state");
    std::string intervene_state, intervene_kind;
    std::optional<double> intervene_probability;
    add_common_options(intervene, opts);
    intervene->add_option("--state", intervene_state, "saved population JSON")->required();
    intervene->add_option("--kind", intervene_kind, "vanilla_cpi | stable_cpi")->required();
    intervene->add_option("--probability", intervene_probability, "acceptance probability");

    auto* validate = app.add_subcommand("validate-config", "parse and validate a config file");
    std::string validate_path;
    validate->add_option("--config", validate_path, "JSON experiment configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(opts, save_state);
        if (h1->parsed()) return cmd_h1(opts);
        if (h2->parsed()) return cmd_h2(opts);
        if (shock->parsed()) {
            return cmd_shock(opts, state_path, shock_kind, magnitude, new_strategy, probability);
        }
        if (intervene->parsed()) {
            return cmd_intervene(opts, intervene_state, intervene_kind, intervene_probability);
        }
        if (validate->parsed()) {
            load_config_file(validate_path);
            std::cout << "config ok: " << validate_path << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
