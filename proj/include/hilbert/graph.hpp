#pragma once

#include "hilbert/net.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace hilbert {

// Undirected simple graph in compressed adjacency form; neighbor lists sorted.
struct Graph {
  std::vector<std::size_t> offsets{0};
  std::vector<int> adj;

  int size() const { return static_cast<int>(offsets.size()) - 1; }
  std::span<const int> neighbors(int v) const {
    return {adj.data() + offsets[v], adj.data() + offsets[v + 1]};
  }
  int degree(int v) const { return static_cast<int>(offsets[v + 1] - offsets[v]); }
  bool adjacent(int u, int v) const;

  /// Loops dropped, duplicates merged, both directions stored.
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);
};

/// Hop counts from `source`; -1 where unreachable.
std::vector<int> bfs_distances(const Graph& g, int source);
bool is_connected(const Graph& g);
/// card{v : d_G(source, v) <= k} for k = 0..kmax.
std::vector<long long> graph_ball_sizes(const Graph& g, int source, int kmax);

struct DiscretizationGraph {
  const Net* net = nullptr;  // not owned
  double rho = 0.0;
  Graph graph;
};

/// max(covering_radius_est, eps): a maximal eps-net eps-covers.
double default_rho(const Net& net);

/// Vertices are the net points; xi ~ eta iff 0 < d(xi, eta) <= 3 rho.
/// Throws if rho is below the covering estimate or the result is disconnected.
DiscretizationGraph build_graph(const Net& net, double rho);

int graph_distance(const DiscretizationGraph& g, int i, int j);

struct QuasiIsometryReport {
  double a_lower = 1.0;   // max d_C / d_G: the lower inequality a^-1 d_C <= d_G
  double a_upper = 1.0;   // slope of the upper inequality d_G <= a d_C + b
  double b = 0.0;
  int pairs = 0;
  double max_dc_over_rho_dg = 0.0;  // <= 3 always; <= 1 is the sharper path bound
  int sharper_bound_violations = 0;
};

/// Samples vertex pairs and fits the smallest constants for which both
/// quasi-isometry inequalities hold on the sample. The upper slope is the
/// largest d_G / d_C over pairs with d_C >= the edge length 3 rho, and b is
/// the least offset that makes every pair satisfy the inequality with it.
QuasiIsometryReport quasi_isometry_report(const DiscretizationGraph& g, int n_pairs, std::uint64_t seed);

void write_adjacency(std::ostream& out, const Graph& g);
void write_dot(std::ostream& out, const DiscretizationGraph& g);

}  // namespace hilbert
