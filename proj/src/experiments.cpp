#include "stagsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "stagsim/csv.hpp"
#include "stagsim/svg.hpp"

namespace stagsim {

namespace {

// Runs fn(0..count-1) on up to `threads` workers. Each index owns its seeds,
// so the schedule cannot influence results.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (std::thread& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

const InterventionSpec& find_intervention(const ExperimentConfig& config, InterventionKind kind) {
    for (const InterventionSpec& spec : config.interventions) {
        if (spec.kind == kind) return spec;
    }
    throw ConfigError(std::string("h2 requires an intervention of kind ") +
                      intervention_kind_name(kind));
}

const ShockSpec& find_shock(const ExperimentConfig& config, ShockKind kind) {
    for (const ShockSpec& spec : config.shocks) {
        if (spec.kind == kind) return spec;
    }
    throw ConfigError(std::string("h2 requires a shock of kind ") + shock_kind_name(kind));
}

std::string opt_field(const std::optional<double>& v) {
    return v ? format_double(*v) : "NA";
}

} // namespace

H1Result run_h1(const ExperimentConfig& config) {
    config.validate();
    const int n_shocks = static_cast<int>(config.shocks.size());

    struct PerConfig {
        double stability = 0.0;
        std::vector<double> resilience;
    };
    std::vector<PerConfig> per_config(config.n_configs);

    parallel_for(config.n_configs, config.threads, [&](int c) {
        const std::uint64_t config_seed = config.base_seed + static_cast<std::uint64_t>(c);
        Population pop =
            build_population(config.population, derive_seed(config_seed, seed_stream::kBuild));
        Rng rng_run(derive_seed(config_seed, seed_stream::kConverge));
        auto [state, trace] = run_to_convergence(std::move(pop), config.model, rng_run);

        PerConfig& out = per_config[c];
        out.stability =
            stability(state.population, state.population.strategies, config.model.dissonance_norm);
        out.resilience.resize(n_shocks);
        for (int k = 0; k < n_shocks; ++k) {
            Rng rng_shock(derive_seed(config_seed, seed_stream::kShockBase + k));
            out.resilience[k] =
                measure_resilience(state, config.shocks[k], config.model, rng_shock).resilience;
        }
    });

    H1Result result;
    for (int c = 0; c < config.n_configs; ++c) {
        for (int k = 0; k < n_shocks; ++k) {
            result.records.push_back({c, config.base_seed + static_cast<std::uint64_t>(c),
                                      per_config[c].stability, config.shocks[k].kind,
                                      per_config[c].resilience[k]});
        }
    }
    std::vector<double> xs(config.n_configs);
    for (int c = 0; c < config.n_configs; ++c) xs[c] = per_config[c].stability;
    for (int k = 0; k < n_shocks; ++k) {
        std::vector<double> ys(config.n_configs);
        for (int c = 0; c < config.n_configs; ++c) ys[c] = per_config[c].resilience[k];
        result.fits.push_back({config.shocks[k].kind, fit_least_squares(xs, ys)});
    }
    return result;
}

H2Result run_h2(const ExperimentConfig& config) {
    config.validate();
    const InterventionSpec& vanilla = find_intervention(config, InterventionKind::VanillaCPI);
    const InterventionSpec& stable = find_intervention(config, InterventionKind::StableCPI);
    const ShockSpec& hub_attack = find_shock(config, ShockKind::AttackHubs);
    const ShockSpec& breaks = find_shock(config, ShockKind::ConnectionBreaks);
    const ShockSpec& dropout = find_shock(config, ShockKind::AgentsDropOut);

    Population pop =
        build_population(config.population, derive_seed(config.base_seed, seed_stream::kH2Build));
    Rng rng_run(derive_seed(config.base_seed, seed_stream::kH2Converge));
    auto [initial, trace] = run_to_convergence(std::move(pop), config.model, rng_run);

    // Identical stage seed for both interventions pairs their acceptance
    // draws, settling runs and hub attacks.
    const std::uint64_t stage_seed = derive_seed(config.base_seed, seed_stream::kH2Intervene);
    InterventionOutcome vanilla_out =
        evaluate_intervention_outcome(initial, vanilla, config.model, {hub_attack}, stage_seed);
    InterventionOutcome stable_out =
        evaluate_intervention_outcome(initial, stable, config.model, {hub_attack}, stage_seed);

    H2Result result;
    for (const InterventionOutcome* out : {&vanilla_out, &stable_out}) {
        const InterventionReport& r = out->report;
        H2Table3Row row;
        row.kind = r.kind;
        row.n = r.n;
        row.cyclists_before = r.cyclists_before;
        row.cyclists_after = r.cyclists_after;
        row.impact = r.impact;
        row.cyclists_after_attack = r.shocks.at(0).cyclists_after_shock;
        row.resilience_t1 = r.shocks.at(0).resilience;
        row.edges_added = r.edges_added;
        row.stability_before = r.stability_before;
        row.stability_after = r.stability_after;
        result.table3.push_back(row);
    }

    H2Table4Row sums;
    for (int rep = 0; rep < config.h2_shock_replications; ++rep) {
        H2Table4Row row;
        row.simulation = rep + 1;
        {
            Rng rng_v(derive_seed(config.base_seed, seed_stream::kH2PerturbR1 + rep));
            Rng rng_s(derive_seed(config.base_seed, seed_stream::kH2PerturbR1 + rep));
            row.r1_vanilla =
                measure_resilience(vanilla_out.post_state, breaks, config.model, rng_v).resilience;
            row.r1_stable =
                measure_resilience(stable_out.post_state, breaks, config.model, rng_s).resilience;
        }
        {
            Rng rng_v(derive_seed(config.base_seed, seed_stream::kH2PerturbR2 + rep));
            Rng rng_s(derive_seed(config.base_seed, seed_stream::kH2PerturbR2 + rep));
            row.r2_vanilla =
                measure_resilience(vanilla_out.post_state, dropout, config.model, rng_v).resilience;
            row.r2_stable =
                measure_resilience(stable_out.post_state, dropout, config.model, rng_s).resilience;
        }
        sums.r1_vanilla += row.r1_vanilla;
        sums.r1_stable += row.r1_stable;
        sums.r2_vanilla += row.r2_vanilla;
        sums.r2_stable += row.r2_stable;
        result.table4.push_back(row);
    }
    H2Table4Row avg;
    avg.simulation = 0;
    const double reps = config.h2_shock_replications;
    avg.r1_vanilla = sums.r1_vanilla / reps;
    avg.r1_stable = sums.r1_stable / reps;
    avg.r2_vanilla = sums.r2_vanilla / reps;
    avg.r2_stable = sums.r2_stable / reps;
    result.table4.push_back(avg);
    return result;
}

std::vector<std::filesystem::path> write_h1_outputs(const H1Result& result,
                                                    const ExperimentConfig& config) {
    const std::filesystem::path dir(config.output_dir);
    std::vector<std::filesystem::path> written;

    if (config.format == OutputFormat::Csv) {
        std::string records = join_csv({"config", "seed", "stability", "shock", "resilience"});
        for (const H1Record& r : result.records) {
            records += join_csv({std::to_string(r.config_index), std::to_string(r.seed),
                                 format_double(r.stability), shock_kind_name(r.shock),
                                 format_double(r.resilience)});
        }
        written.push_back(dir / "h1_records.csv");
        write_text_file(written.back(), records);

        std::string fits = join_csv({"shock", "slope", "intercept", "r_squared"});
        for (const H1Fit& f : result.fits) {
            fits += join_csv({shock_kind_name(f.shock),
                              f.fit ? format_double(f.fit->slope) : "NA",
                              f.fit ? format_double(f.fit->intercept) : "NA",
                              f.fit ? format_double(f.fit->r_squared) : "NA"});
        }
        written.push_back(dir / "h1_fits.csv");
        write_text_file(written.back(), fits);
    } else {
        nlohmann::ordered_json records = nlohmann::ordered_json::array();
        for (const H1Record& r : result.records) {
            records.push_back({{"config", r.config_index},
                               {"seed", r.seed},
                               {"stability", r.stability},
                               {"shock", shock_kind_name(r.shock)},
                               {"resilience", r.resilience}});
        }
        written.push_back(dir / "h1_records.json");
        write_text_file(written.back(), records.dump(2) + "\n");

        nlohmann::ordered_json fits = nlohmann::ordered_json::array();
        for (const H1Fit& f : result.fits) {
            nlohmann::ordered_json entry{{"shock", shock_kind_name(f.shock)}};
            if (f.fit) {
                entry["slope"] = f.fit->slope;
                entry["intercept"] = f.fit->intercept;
                entry["r_squared"] = f.fit->r_squared;
            } else {
                entry["slope"] = nullptr;
                entry["intercept"] = nullptr;
                entry["r_squared"] = nullptr;
            }
            fits.push_back(entry);
        }
        written.push_back(dir / "h1_fits.json");
        write_text_file(written.back(), fits.dump(2) + "\n");
    }

    for (const H1Fit& f : result.fits) {
        std::vector<std::pair<double, double>> points;
        for (const H1Record& r : result.records) {
            if (r.shock == f.shock) points.emplace_back(r.stability, r.resilience);
        }
        ScatterLabels labels;
        labels.title = std::string("Resilience vs stability: ") + shock_kind_name(f.shock);
        labels.x_label = "stability";
        labels.y_label = "resilience";
        written.push_back(dir / (std::string("h1_scatter_") + shock_kind_name(f.shock) + ".svg"));
        write_text_file(written.back(), scatter_svg(points, f.fit, labels));
    }
    return written;
}

std::vector<std::filesystem::path> write_h2_outputs(const H2Result& result,
                                                    const ExperimentConfig& config) {
    const std::filesystem::path dir(config.output_dir);
    std::vector<std::filesystem::path> written;

    const auto frac = [](int count, int n) { return static_cast<double>(count) / n; };

    if (config.format == OutputFormat::Csv) {
        std::string t3 = join_csv({"intervention", "cyclists_before", "cyclists_after", "impact",
                                   "cyclists_after_attack", "resilience_T1", "edges_added",
                                   "stability_before", "stability_after"});
        for (const H2Table3Row& r : result.table3) {
            t3 += join_csv({intervention_kind_name(r.kind),
                            format_double(frac(r.cyclists_before, r.n)),
                            format_double(frac(r.cyclists_after, r.n)), opt_field(r.impact),
                            format_double(frac(r.cyclists_after_attack, r.n)),
                            format_double(r.resilience_t1), std::to_string(r.edges_added),
                            format_double(r.stability_before), format_double(r.stability_after)});
        }
        written.push_back(dir / "h2_table3.csv");
        write_text_file(written.back(), t3);

        std::string t4 = join_csv({"simulation", "resilience_R1_vanilla", "resilience_R1_stable",
                                   "resilience_R2_vanilla", "resilience_R2_stable"});
        for (const H2Table4Row& r : result.table4) {
            t4 += join_csv({r.simulation == 0 ? std::string("average")
                                              : std::to_string(r.simulation),
                            format_double(r.r1_vanilla), format_double(r.r1_stable),
                            format_double(r.r2_vanilla), format_double(r.r2_stable)});
        }
        written.push_back(dir / "h2_table4.csv");
        write_text_file(written.back(), t4);
    } else {
        nlohmann::ordered_json t3 = nlohmann::ordered_json::array();
        for (const H2Table3Row& r : result.table3) {
            nlohmann::ordered_json entry{{"intervention", intervention_kind_name(r.kind)},
                                         {"cyclists_before", frac(r.cyclists_before, r.n)},
                                         {"cyclists_after", frac(r.cyclists_after, r.n)}};
            if (r.impact) entry["impact"] = *r.impact;
            else entry["impact"] = nullptr;
            entry["cyclists_after_attack"] = frac(r.cyclists_after_attack, r.n);
            entry["resilience_T1"] = r.resilience_t1;
            entry["edges_added"] = r.edges_added;
            entry["stability_before"] = r.stability_before;
            entry["stability_after"] = r.stability_after;
            t3.push_back(entry);
        }
        written.push_back(dir / "h2_table3.json");
        write_text_file(written.back(), t3.dump(2) + "\n");

        nlohmann::ordered_json t4 = nlohmann::ordered_json::array();
        for (const H2Table4Row& r : result.table4) {
            t4.push_back({{"simulation", r.simulation == 0 ? nlohmann::ordered_json("average")
                                                           : nlohmann::ordered_json(r.simulation)},
                          {"resilience_R1_vanilla", r.r1_vanilla},
                          {"resilience_R1_stable", r.r1_stable},
                          {"resilience_R2_vanilla", r.r2_vanilla},
                          {"resilience_R2_stable", r.r2_stable}});
        }
        written.push_back(dir / "h2_table4.json");
        write_text_file(written.back(), t4.dump(2) + "\n");
    }
    return written;
}

std::vector<std::filesystem::path> write_trace_outputs(const SimulationTrace& trace,
                                                       const ExperimentConfig& config) {
    const std::filesystem::path dir(config.output_dir);
    std::vector<std::filesystem::path> written;
    if (config.format == OutputFormat::Csv) {
        std::string text = join_csv({"epoch", "cyclists", "energy", "stability", "revised"});
        for (const TraceRow& row : trace.rows) {
            text += join_csv({std::to_string(row.epoch), std::to_string(row.cyclists),
                              format_double(row.energy), format_double(row.stability),
                              std::to_string(row.revised)});
        }
        written.push_back(dir / "trace.csv");
        write_text_file(written.back(), text);
    } else {
        nlohmann::ordered_json doc;
        doc["converged"] = trace.converged;
        doc["final_epoch"] = trace.final_epoch;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const TraceRow& row : trace.rows) {
            rows.push_back({{"epoch", row.epoch},
                            {"cyclists", row.cyclists},
                            {"energy", row.energy},
                            {"stability", row.stability},
                            {"revised", row.revised}});
        }
        doc["trace"] = std::move(rows);
        written.push_back(dir / "trace.json");
        write_text_file(written.back(), doc.dump(2) + "\n");
    }
    return written;
}

} // namespace stagsim
