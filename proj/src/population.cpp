#include "stagsim/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stagsim {

double euclidean_distance(const Position& p, const Position& q) {
    const double dlat = p.latitude - q.latitude;
    const double dlon = p.longitude - q.longitude;
    return std::sqrt(dlat * dlat + dlon * dlon);
}

Profile profile_of(double strategy) {
    if (!(strategy >= 0.0 && strategy <= 1.0)) {
        throw std::out_of_range("profile_of: strategy outside [0, 1]: " +
                                std::to_string(strategy));
    }
    if (strategy < 0.25) return Profile::HighlyDistrusting;
    if (strategy < 0.5) return Profile::Distrusting;
    if (strategy < 0.75) return Profile::Trusting;
    return Profile::HighlyTrusting;
}

const char* profile_name(Profile p) {
    switch (p) {
    case Profile::HighlyDistrusting: return "highly_distrusting";
    case Profile::Distrusting: return "distrusting";
    case Profile::Trusting: return "trusting";
    case Profile::HighlyTrusting: return "highly_trusting";
    }
    return "unknown";
}

void SocialNetwork::check_node(int i) const {
    if (i < 0 || i >= size()) {
        throw std::out_of_range("SocialNetwork: node id " + std::to_string(i) +
                                " outside [0, " + std::to_string(size()) + ")");
    }
}

bool SocialNetwork::has_edge(int a, int b) const {
    check_node(a);
    check_node(b);
    return adj_[a].count(b) > 0;
}

bool SocialNetwork::add_edge(int a, int b) {
    check_node(a);
    check_node(b);
    if (a == b) throw std::invalid_argument("SocialNetwork: self-loops are not allowed");
    const bool inserted = adj_[a].insert(b).second;
    if (inserted) {
        adj_[b].insert(a);
        ++edge_count_;
    }
    return inserted;
}

bool SocialNetwork::remove_edge(int a, int b) {
    check_node(a);
    check_node(b);
    const bool erased = adj_[a].erase(b) > 0;
    if (erased) {
        adj_[b].erase(a);
        --edge_count_;
    }
    return erased;
}

void SocialNetwork::remove_incident(int i) {
    check_node(i);
    for (int j : adj_[i]) {
        adj_[j].erase(i);
        --edge_count_;
    }
    adj_[i].clear();
}

std::vector<std::pair<int, int>> SocialNetwork::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int a = 0; a < size(); ++a) {
        for (int b : adj_[a]) {
            if (b > a) out.emplace_back(a, b);
        }
    }
    return out;
}

ClusteredPlacement place_agents_clustered_detailed(int n, const PlacementParams& params,
                                                   Rng& rng) {
    if (n < 1) throw std::invalid_argument("place_agents_clustered: n must be >= 1");
    if (params.n_clusters < 1) {
        throw std::invalid_argument("place_agents_clustered: n_clusters must be >= 1");
    }
    if (params.cluster_sigma < 0.0) {
        throw std::invalid_argument("place_agents_clustered: cluster_sigma must be >= 0");
    }

    ClusteredPlacement out;
    out.centers.reserve(params.n_clusters);
    for (int c = 0; c < params.n_clusters; ++c) {
        out.centers.push_back({rng.uniform01(), rng.uniform01()});
    }
    out.positions.reserve(n);
    out.cluster_of.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int c = static_cast<int>(rng.uniform_index(out.centers.size()));
        const Position& center = out.centers[c];
        Position p;
        p.latitude = std::clamp(center.latitude + rng.normal(0.0, params.cluster_sigma), 0.0, 1.0);
        p.longitude =
            std::clamp(center.longitude + rng.normal(0.0, params.cluster_sigma), 0.0, 1.0);
        out.positions.push_back(p);
        out.cluster_of.push_back(c);
    }
    return out;
}

std::vector<Position> place_agents_clustered(int n, const PlacementParams& params, Rng& rng) {
    return place_agents_clustered_detailed(n, params, rng).positions;
}

PhysicalNetwork build_physical_network(const std::vector<Position>& positions, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("build_physical_network: radius must be > 0");
    const int n = static_cast<int>(positions.size());
    std::vector<std::vector<PhysicalNeighbor>> adj(n);
    std::vector<PhysicalNetwork::Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(positions[i], positions[j]);
            if (d <= radius) {
                adj[i].push_back({j, d});
                adj[j].push_back({i, d});
                edges.push_back({i, j, d});
            }
        }
    }
    // The double loop already emits neighbors in ascending id order.
    return PhysicalNetwork(std::move(adj), std::move(edges), radius);
}

SocialNetwork generate_ba_network(int n, int m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("generate_ba_network: m must be >= 1");
    if (m >= n) throw std::invalid_argument("generate_ba_network: m must be < n");

    SocialNetwork g(n);
    // Every node appears in repeated_ids once per unit of degree; sampling an
    // index of this list realizes preferential attachment.
    std::vector<int> repeated_ids;
    const int seed_nodes = m + 1;
    for (int i = 0; i < seed_nodes; ++i) {
        for (int j = i + 1; j < seed_nodes; ++j) {
            g.add_edge(i, j);
            repeated_ids.push_back(i);
            repeated_ids.push_back(j);
        }
    }
    std::vector<int> targets;
    for (int v = seed_nodes; v < n; ++v) {
        targets.clear();
        while (static_cast<int>(targets.size()) < m) {
            const int candidate = repeated_ids[rng.uniform_index(repeated_ids.size())];
            if (std::find(targets.begin(), targets.end(), candidate) == targets.end()) {
                targets.push_back(candidate);
            }
        }
        for (int t : targets) {
            g.add_edge(v, t);
            repeated_ids.push_back(t);
            repeated_ids.push_back(v);
        }
    }
    return g;
}

std::vector<double> assign_initial_strategies(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("assign_initial_strategies: n must be >= 1");
    std::vector<double> s(n);
    for (double& v : s) v = rng.uniform01();
    return s;
}

std::vector<double> hub_scores(const SocialNetwork& social) {
    std::vector<double> scores(social.size());
    for (int i = 0; i < social.size(); ++i) scores[i] = static_cast<double>(social.degree(i));
    return scores;
}

std::vector<int> rank_by_hub_score(const SocialNetwork& social) {
    const std::vector<double> scores = hub_scores(social);
    std::vector<int> order(social.size());
    for (int i = 0; i < social.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    return order;
}

void PopulationParams::validate() const {
    if (n < 1) throw std::invalid_argument("population.n must be >= 1");
    if (influence_radius <= 0.0) throw std::invalid_argument("population.influence_radius must be > 0");
    if (ba_m < 1) throw std::invalid_argument("population.ba_m must be >= 1");
    if (ba_m >= n) throw std::invalid_argument("population.ba_m must be < population.n");
    if (placement.n_clusters < 1) throw std::invalid_argument("population.n_clusters must be >= 1");
    if (placement.cluster_sigma < 0.0) {
        throw std::invalid_argument("population.cluster_sigma must be >= 0");
    }
}

Population build_population(const PopulationParams& params, std::uint64_t seed) {
    params.validate();
    Rng rng(seed);
    Population pop;
    pop.n = params.n;
    pop.positions = place_agents_clustered(params.n, params.placement, rng);
    pop.physical = build_physical_network(pop.positions, params.influence_radius);
    pop.social = generate_ba_network(params.n, params.ba_m, rng);
    pop.strategies = assign_initial_strategies(params.n, rng);
    return pop;
}

void check_population_invariants(const Population& pop) {
    const int n = pop.n;
    if (static_cast<int>(pop.positions.size()) != n ||
        static_cast<int>(pop.strategies.size()) != n || pop.physical.size() != n ||
        pop.social.size() != n) {
        throw std::logic_error("population invariant: per-agent collections must have length n");
    }
    for (int i = 0; i < n; ++i) {
        if (!(pop.strategies[i] >= 0.0 && pop.strategies[i] <= 1.0)) {
            throw std::logic_error("population invariant: strategy outside [0, 1] at agent " +
                                   std::to_string(i));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (const PhysicalNeighbor& nb : pop.physical.neighbors(i)) {
            if (nb.id == i) throw std::logic_error("population invariant: physical self-loop");
            const auto& back = pop.physical.neighbors(nb.id);
            const bool symmetric =
                std::any_of(back.begin(), back.end(),
                            [&](const PhysicalNeighbor& x) { return x.id == i; });
            if (!symmetric) throw std::logic_error("population invariant: physical asymmetry");
        }
    }
    std::size_t directed = 0;
    for (int i = 0; i < n; ++i) {
        for (int j : pop.social.neighbors(i)) {
            if (j == i) throw std::logic_error("population invariant: social self-loop");
            if (pop.social.neighbors(j).count(i) == 0) {
                throw std::logic_error("population invariant: social asymmetry");
            }
            ++directed;
        }
    }
    if (directed != 2 * pop.social.edge_count()) {
        throw std::logic_error("population invariant: social edge count mismatch");
    }
}

int cyclist_count(const std::vector<double>& strategies) {
    int count = 0;
    for (double s : strategies) {
        if (s > 0.5) ++count;
    }
    return count;
}

} // namespace stagsim
