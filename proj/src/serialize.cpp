#include "stagsim/serialize.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace stagsim {

namespace {

constexpr const char* kFormat = "stagsim-population";
constexpr int kVersion = 1;

[[noreturn]] void bad_document(const std::string& why) {
    throw std::runtime_error("population document: " + why);
}

} // namespace

std::string population_to_json(const Population& pop, const PopulationParams& params,
                               std::uint64_t seed) {
    nlohmann::ordered_json doc;
    doc["format"] = kFormat;
    doc["version"] = kVersion;
    doc["n"] = pop.n;
    doc["seed"] = seed;
    doc["params"] = {{"influence_radius", params.influence_radius},
                     {"ba_m", params.ba_m},
                     {"n_clusters", params.placement.n_clusters},
                     {"cluster_sigma", params.placement.cluster_sigma}};
    auto positions = nlohmann::ordered_json::array();
    for (const Position& p : pop.positions) {
        positions.push_back({p.latitude, p.longitude});
    }
    doc["positions"] = std::move(positions);
    doc["strategies"] = pop.strategies;
    auto physical = nlohmann::ordered_json::array();
    for (const auto& e : pop.physical.edges()) physical.push_back({e.a, e.b});
    doc["physical_edges"] = std::move(physical);
    auto social = nlohmann::ordered_json::array();
    for (const auto& [a, b] : pop.social.edges()) social.push_back({a, b});
    doc["social_edges"] = std::move(social);
    return doc.dump(2) + "\n";
}

PopulationDocument population_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        bad_document(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad_document("top level must be an object");
    if (doc.value("format", "") != kFormat) bad_document("unexpected format tag");
    if (doc.value("version", -1) != kVersion) bad_document("unsupported version");

    PopulationDocument out;
    try {
        const int n = doc.at("n").get<int>();
        if (n < 1) bad_document("n must be >= 1");
        out.seed = doc.at("seed").get<std::uint64_t>();
        const auto& params = doc.at("params");
        out.params.n = n;
        out.params.influence_radius = params.at("influence_radius").get<double>();
        out.params.ba_m = params.at("ba_m").get<int>();
        out.params.placement.n_clusters = params.at("n_clusters").get<int>();
        out.params.placement.cluster_sigma = params.at("cluster_sigma").get<double>();

        Population& pop = out.population;
        pop.n = n;
        for (const auto& entry : doc.at("positions")) {
            if (!entry.is_array() || entry.size() != 2) bad_document("malformed position");
            pop.positions.push_back({entry[0].get<double>(), entry[1].get<double>()});
        }
        pop.strategies = doc.at("strategies").get<std::vector<double>>();
        if (static_cast<int>(pop.positions.size()) != n ||
            static_cast<int>(pop.strategies.size()) != n) {
            bad_document("positions/strategies must have length n");
        }
        for (double s : pop.strategies) {
            if (!(s >= 0.0 && s <= 1.0)) bad_document("strategy outside [0, 1]");
        }

        pop.physical = build_physical_network(pop.positions, out.params.influence_radius);
        std::set<std::pair<int, int>> stored;
        for (const auto& entry : doc.at("physical_edges")) {
            if (!entry.is_array() || entry.size() != 2) bad_document("malformed physical edge");
            stored.insert({entry[0].get<int>(), entry[1].get<int>()});
        }
        std::set<std::pair<int, int>> rebuilt;
        for (const auto& e : pop.physical.edges()) rebuilt.insert({e.a, e.b});
        if (stored != rebuilt) {
            bad_document("physical edges disagree with positions and influence_radius");
        }

        pop.social = SocialNetwork(n);
        for (const auto& entry : doc.at("social_edges")) {
            if (!entry.is_array() || entry.size() != 2) bad_document("malformed social edge");
            const int a = entry[0].get<int>();
            const int b = entry[1].get<int>();
            if (a < 0 || a >= n || b < 0 || b >= n || a == b) bad_document("social edge out of range");
            pop.social.add_edge(a, b);
        }
    } catch (const nlohmann::json::exception& e) {
        bad_document(std::string("missing or mistyped field: ") + e.what());
    }
    check_population_invariants(out.population);
    return out;
}

void save_population(const std::filesystem::path& path, const Population& pop,
                     const PopulationParams& params, std::uint64_t seed) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open for writing: " + path.string());
    file << population_to_json(pop, params, seed);
}

PopulationDocument load_population(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open: " + path.string());
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return population_from_json(text);
}

} // namespace stagsim
