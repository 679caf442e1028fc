// Dissonance, energy, stability, impact, resilience and the least-squares
// statistics used by the correlation study.
#pragma once

#include <optional>
#include <vector>

#include "stagsim/population.hpp"

namespace stagsim {

// How a single-strategy deviation enters stress and stability. The squared
// reading keeps stability in [0, 1] and is consistent with the mean being
// each agent's stress minimizer; the absolute variant exists for
// sensitivity analysis.
enum class DissonanceNorm { SquaredDiff, AbsoluteDiff };

double dissonance_term(double a, double b, DissonanceNorm norm);

// Mean of the two-layer neighbour multiset: an agent adjacent in both layers
// counts twice. Neighbourless agents fall back to their own strategy.
double optimal_strategy(int i, const Population& pop, const std::vector<double>& strategies);
std::vector<double> optimal_strategies(const Population& pop,
                                       const std::vector<double>& strategies);

double agent_stress(int i, const Population& pop, const std::vector<double>& strategies,
                    DissonanceNorm norm = DissonanceNorm::SquaredDiff);
double system_energy(const Population& pop, const std::vector<double>& strategies,
                     DissonanceNorm norm = DissonanceNorm::SquaredDiff);

// 1 - mean per-agent deviation from the optimal strategy.
double stability(const Population& pop, const std::vector<double>& strategies,
                 DissonanceNorm norm = DissonanceNorm::SquaredDiff);

// Relative growth of the cyclist count (strictly s > 0.5). Empty when there
// were no cyclists before.
std::optional<double> impact_score(const std::vector<double>& before,
                                   const std::vector<double>& after);

// exp(-||before - after||_2); throws std::invalid_argument on length mismatch.
double resilience_score(const std::vector<double>& before, const std::vector<double>& after);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares; r_squared is the squared Pearson correlation
// (zero when ys carry no variance). Empty on fewer than two points or
// degenerate xs.
std::optional<FitResult> fit_least_squares(const std::vector<double>& xs,
                                           const std::vector<double>& ys);

} // namespace stagsim
