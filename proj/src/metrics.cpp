#include "stagsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace stagsim {

double dissonance_term(double a, double b, DissonanceNorm norm) {
    const double diff = a - b;
    return norm == DissonanceNorm::SquaredDiff ? diff * diff : std::abs(diff);
}

double optimal_strategy(int i, const Population& pop, const std::vector<double>& strategies) {
    double sum = 0.0;
    int count = 0;
    for (const PhysicalNeighbor& nb : pop.physical.neighbors(i)) {
        sum += strategies[nb.id];
        ++count;
    }
    for (int j : pop.social.neighbors(i)) {
        sum += strategies[j];
        ++count;
    }
    return count > 0 ? sum / count : strategies[i];
}

std::vector<double> optimal_strategies(const Population& pop,
                                       const std::vector<double>& strategies) {
    std::vector<double> out(pop.n);
    for (int i = 0; i < pop.n; ++i) out[i] = optimal_strategy(i, pop, strategies);
    return out;
}

double agent_stress(int i, const Population& pop, const std::vector<double>& strategies,
                    DissonanceNorm norm) {
    double stress = 0.0;
    const double s_i = strategies[i];
    for (const PhysicalNeighbor& nb : pop.physical.neighbors(i)) {
        stress += dissonance_term(strategies[nb.id], s_i, norm);
    }
    for (int j : pop.social.neighbors(i)) {
        stress += dissonance_term(strategies[j], s_i, norm);
    }
    return stress;
}

double system_energy(const Population& pop, const std::vector<double>& strategies,
                     DissonanceNorm norm) {
    double energy = 0.0;
    for (int i = 0; i < pop.n; ++i) energy += agent_stress(i, pop, strategies, norm);
    return energy;
}

double stability(const Population& pop, const std::vector<double>& strategies,
                 DissonanceNorm norm) {
    if (pop.n < 1) throw std::invalid_argument("stability: population is empty");
    double deviation = 0.0;
    for (int i = 0; i < pop.n; ++i) {
        deviation += dissonance_term(optimal_strategy(i, pop, strategies), strategies[i], norm);
    }
    return 1.0 - deviation / pop.n;
}

std::optional<double> impact_score(const std::vector<double>& before,
                                   const std::vector<double>& after) {
    const int base = cyclist_count(before);
    if (base == 0) return std::nullopt;
    return static_cast<double>(cyclist_count(after) - base) / base;
}

double resilience_score(const std::vector<double>& before, const std::vector<double>& after) {
    if (before.size() != after.size()) {
        throw std::invalid_argument("resilience_score: strategy vectors differ in length");
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        const double d = before[i] - after[i];
        sq += d * d;
    }
    return std::exp(-std::sqrt(sq));
}

std::optional<FitResult> fit_least_squares(const std::vector<double>& xs,
                                           const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) return std::nullopt;
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) return std::nullopt;

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.r_squared = syy == 0.0 ? 0.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

} // namespace stagsim
