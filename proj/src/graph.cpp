#include "hilbert/graph.hpp"

#include "hilbert/metric.hpp"
#include "hilbert/parallel.hpp"
#include "hilbert/sampling.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <stdexcept>

namespace hilbert {

bool Graph::adjacent(int u, int v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  require(n >= 0, "Graph: negative size");
  std::vector<std::pair<int, int>> both;
  both.reserve(2 * edges.size());
  for (auto [u, v] : edges) {
    require(u >= 0 && u < n && v >= 0 && v < n, "Graph: vertex out of range");
    if (u == v) continue;
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());
  Graph g;
  g.offsets.assign(n + 1, 0);
  for (const auto& e : both) ++g.offsets[e.first + 1];
  for (int i = 0; i < n; ++i) g.offsets[i + 1] += g.offsets[i];
  g.adj.reserve(both.size());
  for (const auto& e : both) g.adj.push_back(e.second);
  return g;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  require(source >= 0 && source < g.size(), "bfs_distances: bad source");
  std::vector<int> dist(g.size(), -1);
  std::deque<int> q{source};
  dist[source] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int v : g.neighbors(u)) {
      if (dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      q.push_back(v);
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.size() <= 1) return true;
  const auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::vector<long long> graph_ball_sizes(const Graph& g, int source, int kmax) {
  require(kmax >= 0, "graph_ball_sizes: negative radius");
  const auto d = bfs_distances(g, source);
  std::vector<long long> out(kmax + 1, 0);
  for (int x : d)
    if (x >= 0 && x <= kmax) ++out[x];
  for (int k = 1; k <= kmax; ++k) out[k] += out[k - 1];
  return out;
}

double default_rho(const Net& net) { return std::max(net.covering_radius_est, net.epsilon); }

DiscretizationGraph build_graph(const Net& net, double rho) {
  require(net.body != nullptr && net.size() >= 1, "build_graph: empty net");
  require(std::isfinite(rho) && rho >= net.covering_radius_est,
          "build_graph: rho is below the covering estimate, the graph may disconnect");
  const NetIndex idx = net.index();
  const double reach = 3.0 * rho;
  const int n = net.size();
  std::vector<std::vector<int>> lists(n);
  parallel::parallel_for(0, n, [&](std::size_t i) {
    auto& li = lists[i];
    for (int j : idx.within(net.points[i], reach))
      if (j != static_cast<int>(i)) li.push_back(j);
  });
  // The lists are symmetric since distances are; from_edges takes the union anyway.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j : lists[i]) edges.emplace_back(std::min(i, j), std::max(i, j));
  DiscretizationGraph g{&net, rho, Graph::from_edges(n, std::move(edges))};
  if (!is_connected(g.graph)) throw ValidationError("build_graph: graph is not connected");
  return g;
}

int graph_distance(const DiscretizationGraph& g, int i, int j) {
  require(i >= 0 && i < g.graph.size() && j >= 0 && j < g.graph.size(), "graph_distance: bad index");
  if (i == j) return 0;
  return bfs_distances(g.graph, i)[j];
}

QuasiIsometryReport quasi_isometry_report(const DiscretizationGraph& g, int n_pairs, std::uint64_t seed) {
  require(n_pairs >= 10, "quasi_isometry_report: need at least 10 pairs");
  require(g.net != nullptr, "quasi_isometry_report: graph without net");
  QuasiIsometryReport rep;
  const int n = g.graph.size();
  if (n <= 1) return rep;
  const ConvexBody& body = *g.net->body;
  auto rng = make_rng(seed, 0x7169);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<std::pair<double, int>> samples;  // (d_C, d_G)
  while (static_cast<int>(samples.size()) < n_pairs) {
    const int i = pick(rng);
    const auto dist = bfs_distances(g.graph, i);
    // a few targets per BFS keeps this affordable on large graphs
    for (int k = 0; k < 8 && static_cast<int>(samples.size()) < n_pairs; ++k) {
      const int j = pick(rng);
      if (j == i) continue;
      samples.emplace_back(distance_unchecked(body, g.net->points[i], g.net->points[j]), dist[j]);
    }
  }
  rep.pairs = static_cast<int>(samples.size());
  rep.a_lower = 0.0;
  rep.a_upper = 0.0;
  const double edge = 3.0 * g.rho;
  for (const auto& [dc, dg] : samples) {
    rep.a_lower = std::max(rep.a_lower, dc / dg);
    if (dc >= edge) rep.a_upper = std::max(rep.a_upper, dg / dc);
    const double ratio = dc / (g.rho * dg);
    rep.max_dc_over_rho_dg = std::max(rep.max_dc_over_rho_dg, ratio);
    if (ratio > 1.0) ++rep.sharper_bound_violations;
    // Each hop spans at most 3 rho, so this can only fail on a broken graph.
    if (ratio > 3.0 * (1.0 + 1e-12)) throw std::logic_error("quasi_isometry_report: hop longer than 3 rho");
  }
  if (rep.a_upper == 0.0) rep.a_upper = 1.0 / edge;
  rep.b = 0.0;
  for (const auto& [dc, dg] : samples) rep.b = std::max(rep.b, dg - rep.a_upper * dc);
  return rep;
}

void write_adjacency(std::ostream& out, const Graph& g) {
  for (int v = 0; v < g.size(); ++v) {
    out << v << ":";
    for (int w : g.neighbors(v)) out << " " << w;
    out << "\n";
  }
}

void write_dot(std::ostream& out, const DiscretizationGraph& g) {
  out << "graph G {\n";
  out << std::setprecision(10);
  if (g.net && g.net->body && g.net->body->dim() == 2) {
    for (int v = 0; v < g.graph.size(); ++v)
      out << "  " << v << " [pos=\"" << g.net->points[v](0) << "," << g.net->points[v](1) << "!\"];\n";
  }
  for (int v = 0; v < g.graph.size(); ++v)
    for (int w : g.graph.neighbors(v))
      if (v < w) out << "  " << v << " -- " << w << ";\n";
  out << "}\n";
}

}  // namespace hilbert
