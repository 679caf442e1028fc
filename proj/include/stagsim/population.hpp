// Agents, spatial placement, the radius-based physical layer and the
// preferential-attachment social layer.
#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "stagsim/rng.hpp"

namespace stagsim {

struct Position {
    double latitude = 0.0;
    double longitude = 0.0;
};

double euclidean_distance(const Position& p, const Position& q);

// Trust profile implied by an agent's probability of choosing the
// cooperative option (cycling).
enum class Profile { HighlyDistrusting, Distrusting, Trusting, HighlyTrusting };

// Intervals are closed on the left; 1.0 belongs to HighlyTrusting.
// Throws std::out_of_range outside [0, 1].
Profile profile_of(double strategy);
const char* profile_name(Profile p);

struct PhysicalNeighbor {
    int id;
    double distance;
};

// Immutable proximity graph: edge (i,j) iff the two agents lie within the
// influence radius of each other. Pair distances are cached per edge.
class PhysicalNetwork {
public:
    struct Edge {
        int a;
        int b; // a < b
        double distance;
    };

    PhysicalNetwork() = default;
    PhysicalNetwork(std::vector<std::vector<PhysicalNeighbor>> adj, std::vector<Edge> edges,
                    double radius)
        : adj_(std::move(adj)), edges_(std::move(edges)), radius_(radius) {}

    int size() const { return static_cast<int>(adj_.size()); }
    double radius() const { return radius_; }
    int degree(int i) const { return static_cast<int>(adj_[i].size()); }
    const std::vector<PhysicalNeighbor>& neighbors(int i) const { return adj_[i]; }
    const std::vector<Edge>& edges() const { return edges_; }

private:
    std::vector<std::vector<PhysicalNeighbor>> adj_; // sorted by neighbor id
    std::vector<Edge> edges_;                        // sorted lexicographically
    double radius_ = 0.0;
};

// Mutable undirected simple graph for the social layer. Set-based adjacency
// rules out duplicates and keeps every iteration order deterministic.
class SocialNetwork {
public:
    SocialNetwork() = default;
    explicit SocialNetwork(int n) : adj_(static_cast<std::size_t>(n)) {}

    int size() const { return static_cast<int>(adj_.size()); }
    bool has_edge(int a, int b) const;
    // Returns true if the edge was newly added. Self-loops are rejected.
    bool add_edge(int a, int b);
    bool remove_edge(int a, int b);
    void remove_incident(int i);
    int degree(int i) const { return static_cast<int>(adj_[i].size()); }
    const std::set<int>& neighbors(int i) const { return adj_[i]; }
    std::size_t edge_count() const { return edge_count_; }
    // All edges as (a, b) with a < b, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

private:
    void check_node(int i) const;

    std::vector<std::set<int>> adj_;
    std::size_t edge_count_ = 0;
};

struct PlacementParams {
    int n_clusters = 5;
    double cluster_sigma = 0.05;
};

struct ClusteredPlacement {
    std::vector<Position> positions;
    std::vector<Position> centers;
    std::vector<int> cluster_of;
};

// Cluster centers drawn uniformly in the unit square; each agent joins a
// uniformly chosen cluster and sits at center + isotropic Gaussian noise,
// clamped to the square.
ClusteredPlacement place_agents_clustered_detailed(int n, const PlacementParams& params, Rng& rng);
std::vector<Position> place_agents_clustered(int n, const PlacementParams& params, Rng& rng);

PhysicalNetwork build_physical_network(const std::vector<Position>& positions, double radius);

// Barabasi-Albert growth: complete seed graph on m+1 nodes, then every new
// node attaches to m distinct existing nodes with probability proportional
// to current degree. Requires 1 <= m < n.
SocialNetwork generate_ba_network(int n, int m, Rng& rng);

// i.i.d. uniform on [0, 1].
std::vector<double> assign_initial_strategies(int n, Rng& rng);

// Hub score of an agent is its social degree.
std::vector<double> hub_scores(const SocialNetwork& social);
// Agent ids ordered by descending hub score, ties broken by ascending id.
std::vector<int> rank_by_hub_score(const SocialNetwork& social);

struct PopulationParams {
    int n = 500;
    double influence_radius = 0.1;
    int ba_m = 2;
    PlacementParams placement;

    void validate() const; // throws std::invalid_argument
};

struct Population {
    int n = 0;
    std::vector<Position> positions;
    PhysicalNetwork physical;
    SocialNetwork social;
    std::vector<double> strategies;
};

Population build_population(const PopulationParams& params, std::uint64_t seed);

// Symmetry, self-loop and duplicate-edge checks plus strategy bounds.
// Throws std::logic_error on the first violation.
void check_population_invariants(const Population& pop);

int cyclist_count(const std::vector<double>& strategies); // strictly s > 0.5

} // namespace stagsim
