// Versioned JSON save/load of populations so converged states can be
// replayed, shocked and intervened on later. Field names are fixed by
// schemas/population.schema.json.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "stagsim/population.hpp"

namespace stagsim {

struct PopulationDocument {
    Population population;
    PopulationParams params;
    std::uint64_t seed = 0;
};

std::string population_to_json(const Population& pop, const PopulationParams& params,
                               std::uint64_t seed);

// Validates lengths, strategy bounds and graph sanity; the physical layer is
// rebuilt from positions and must match the stored edge list exactly.
// Throws std::runtime_error on malformed documents.
PopulationDocument population_from_json(const std::string& text);

void save_population(const std::filesystem::path& path, const Population& pop,
                     const PopulationParams& params, std::uint64_t seed);
PopulationDocument load_population(const std::filesystem::path& path);

} // namespace stagsim
