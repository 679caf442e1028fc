#include "stagsim/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace stagsim {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown key \"" + key + "\" in " + where);
        }
    }
}

template <typename T>
void read_field(const json& obj, const char* key, T& target) {
    if (!obj.contains(key)) return;
    try {
        target = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field \"") + key + "\" has the wrong type");
    }
}

PayoffPair read_pair(const json& arr, const char* key) {
    if (!arr.is_array() || arr.size() != 2) {
        throw ConfigError(std::string("payoff_matrix.") + key + " must be [row, column]");
    }
    return {arr[0].get<double>(), arr[1].get<double>()};
}

void parse_population(const json& obj, PopulationParams& out) {
    require_keys(obj, "population",
                 {"n", "influence_radius", "ba_m", "n_clusters", "cluster_sigma"});
    read_field(obj, "n", out.n);
    read_field(obj, "influence_radius", out.influence_radius);
    read_field(obj, "ba_m", out.ba_m);
    read_field(obj, "n_clusters", out.placement.n_clusters);
    read_field(obj, "cluster_sigma", out.placement.cluster_sigma);
}

void parse_model(const json& obj, ModelParams& out) {
    require_keys(obj, "model",
                 {"conformity_probability", "payoff_attenuation", "learning_rate", "max_epochs",
                  "quiet_epochs", "revision_epsilon", "payoff_mode", "payoff_accumulation",
                  "dissonance_norm", "payoff_matrix"});
    read_field(obj, "conformity_probability", out.conformity_probability);
    read_field(obj, "payoff_attenuation", out.payoff_attenuation);
    read_field(obj, "learning_rate", out.learning_rate);
    read_field(obj, "max_epochs", out.max_epochs);
    read_field(obj, "quiet_epochs", out.quiet_epochs);
    read_field(obj, "revision_epsilon", out.revision_epsilon);
    if (obj.contains("payoff_mode")) {
        const std::string mode = obj.at("payoff_mode").get<std::string>();
        if (mode == "sampled") out.payoff_mode = PayoffMode::Sampled;
        else if (mode == "expected") out.payoff_mode = PayoffMode::Expected;
        else throw ConfigError("model.payoff_mode must be \"sampled\" or \"expected\"");
    }
    if (obj.contains("payoff_accumulation")) {
        const std::string acc = obj.at("payoff_accumulation").get<std::string>();
        if (acc == "per_epoch") out.payoff_accumulation = PayoffAccumulation::PerEpoch;
        else if (acc == "within_run") out.payoff_accumulation = PayoffAccumulation::WithinRun;
        else {
            throw ConfigError(
                "model.payoff_accumulation must be \"per_epoch\" or \"within_run\"");
        }
    }
    if (obj.contains("dissonance_norm")) {
        const std::string norm = obj.at("dissonance_norm").get<std::string>();
        if (norm == "squared") out.dissonance_norm = DissonanceNorm::SquaredDiff;
        else if (norm == "absolute") out.dissonance_norm = DissonanceNorm::AbsoluteDiff;
        else throw ConfigError("model.dissonance_norm must be \"squared\" or \"absolute\"");
    }
    if (obj.contains("payoff_matrix")) {
        const json& pm = obj.at("payoff_matrix");
        require_keys(pm, "model.payoff_matrix", {"cc", "cd", "dc", "dd"});
        if (pm.contains("cc")) out.payoff.cc = read_pair(pm.at("cc"), "cc");
        if (pm.contains("cd")) out.payoff.cd = read_pair(pm.at("cd"), "cd");
        if (pm.contains("dc")) out.payoff.dc = read_pair(pm.at("dc"), "dc");
        if (pm.contains("dd")) out.payoff.dd = read_pair(pm.at("dd"), "dd");
    }
}

ShockSpec parse_shock(const json& obj) {
    if (!obj.contains("kind")) throw ConfigError("every shock needs a \"kind\"");
    ShockSpec spec;
    spec.kind = shock_kind_from_name(obj.at("kind").get<std::string>());
    switch (spec.kind) {
    case ShockKind::AttackHubs:
        require_keys(obj, "shock attack_hubs", {"kind", "attack_magnitude", "new_strategy"});
        read_field(obj, "attack_magnitude", spec.attack_magnitude);
        read_field(obj, "new_strategy", spec.new_strategy);
        break;
    case ShockKind::ConnectDefectors:
        require_keys(obj, "shock connect_defectors", {"kind", "acceptance_probability"});
        read_field(obj, "acceptance_probability", spec.acceptance_probability);
        break;
    case ShockKind::ConnectionBreaks:
    case ShockKind::AgentsDropOut:
        require_keys(obj, std::string("shock ") + shock_kind_name(spec.kind),
                     {"kind", "perturbation_magnitude"});
        read_field(obj, "perturbation_magnitude", spec.perturbation_magnitude);
        break;
    }
    return spec;
}

InterventionSpec parse_intervention(const json& obj) {
    if (!obj.contains("kind")) throw ConfigError("every intervention needs a \"kind\"");
    InterventionSpec spec;
    spec.kind = intervention_kind_from_name(obj.at("kind").get<std::string>());
    require_keys(obj, std::string("intervention ") + intervention_kind_name(spec.kind),
                 {"kind", "acceptance_probability"});
    read_field(obj, "acceptance_probability", spec.acceptance_probability);
    return spec;
}

std::vector<ShockSpec> default_shocks() {
    std::vector<ShockSpec> shocks(4);
    shocks[0].kind = ShockKind::AttackHubs;
    shocks[1].kind = ShockKind::ConnectDefectors;
    shocks[2].kind = ShockKind::ConnectionBreaks;
    shocks[3].kind = ShockKind::AgentsDropOut;
    return shocks;
}

std::vector<InterventionSpec> default_interventions() {
    return {{InterventionKind::VanillaCPI, 0.15}, {InterventionKind::StableCPI, 0.15}};
}

} // namespace

void ExperimentConfig::validate() const {
    try {
        population.validate();
        model.validate();
        for (const ShockSpec& s : shocks) s.validate(population.n);
        for (const InterventionSpec& i : interventions) i.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (n_configs < 2) throw ConfigError("experiment.n_configs must be >= 2 for fitting");
    if (h2_shock_replications < 1) {
        throw ConfigError("experiment.h2_shock_replications must be >= 1");
    }
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (output_dir.empty()) throw ConfigError("output directory must not be empty");
}

ExperimentConfig default_config() {
    ExperimentConfig config;
    config.shocks = default_shocks();
    config.interventions = default_interventions();
    return config;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("top level must be an object");
    require_keys(doc, "config", {"population", "model", "experiment", "shocks", "interventions"});

    ExperimentConfig config = default_config();
    try {
        if (doc.contains("population")) parse_population(doc.at("population"), config.population);
        if (doc.contains("model")) parse_model(doc.at("model"), config.model);
        if (doc.contains("experiment")) {
            const json& exp = doc.at("experiment");
            require_keys(exp, "experiment",
                         {"n_configs", "base_seed", "h2_shock_replications", "output_dir"});
            read_field(exp, "n_configs", config.n_configs);
            read_field(exp, "base_seed", config.base_seed);
            read_field(exp, "h2_shock_replications", config.h2_shock_replications);
            read_field(exp, "output_dir", config.output_dir);
        }
        if (doc.contains("shocks")) {
            config.shocks.clear();
            for (const json& s : doc.at("shocks")) config.shocks.push_back(parse_shock(s));
        }
        if (doc.contains("interventions")) {
            config.interventions.clear();
            for (const json& i : doc.at("interventions")) {
                config.interventions.push_back(parse_intervention(i));
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    config.validate();
    return config;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

std::string config_to_json(const ExperimentConfig& config) {
    nlohmann::ordered_json doc;
    doc["population"] = {{"n", config.population.n},
                         {"influence_radius", config.population.influence_radius},
                         {"ba_m", config.population.ba_m},
                         {"n_clusters", config.population.placement.n_clusters},
                         {"cluster_sigma", config.population.placement.cluster_sigma}};
    const ModelParams& m = config.model;
    doc["model"] = {
        {"conformity_probability", m.conformity_probability},
        {"payoff_attenuation", m.payoff_attenuation},
        {"learning_rate", m.learning_rate},
        {"max_epochs", m.max_epochs},
        {"quiet_epochs", m.quiet_epochs},
        {"revision_epsilon", m.revision_epsilon},
        {"payoff_mode", m.payoff_mode == PayoffMode::Sampled ? "sampled" : "expected"},
        {"payoff_accumulation",
         m.payoff_accumulation == PayoffAccumulation::PerEpoch ? "per_epoch" : "within_run"},
        {"dissonance_norm",
         m.dissonance_norm == DissonanceNorm::SquaredDiff ? "squared" : "absolute"},
        {"payoff_matrix",
         {{"cc", {m.payoff.cc.row, m.payoff.cc.col}},
          {"cd", {m.payoff.cd.row, m.payoff.cd.col}},
          {"dc", {m.payoff.dc.row, m.payoff.dc.col}},
          {"dd", {m.payoff.dd.row, m.payoff.dd.col}}}}};
    doc["experiment"] = {{"n_configs", config.n_configs},
                         {"base_seed", config.base_seed},
                         {"h2_shock_replications", config.h2_shock_replications},
                         {"output_dir", config.output_dir}};
    auto shocks = nlohmann::ordered_json::array();
    for (const ShockSpec& s : config.shocks) {
        nlohmann::ordered_json entry;
        entry["kind"] = shock_kind_name(s.kind);
        switch (s.kind) {
        case ShockKind::AttackHubs:
            entry["attack_magnitude"] = s.attack_magnitude;
            entry["new_strategy"] = s.new_strategy;
            break;
        case ShockKind::ConnectDefectors:
            entry["acceptance_probability"] = s.acceptance_probability;
            break;
        case ShockKind::ConnectionBreaks:
        case ShockKind::AgentsDropOut:
            entry["perturbation_magnitude"] = s.perturbation_magnitude;
            break;
        }
        shocks.push_back(entry);
    }
    doc["shocks"] = std::move(shocks);
    auto interventions = nlohmann::ordered_json::array();
    for (const InterventionSpec& i : config.interventions) {
        interventions.push_back({{"kind", intervention_kind_name(i.kind)},
                                 {"acceptance_probability", i.acceptance_probability}});
    }
    doc["interventions"] = std::move(interventions);
    return doc.dump(2) + "\n";
}

} // namespace stagsim
