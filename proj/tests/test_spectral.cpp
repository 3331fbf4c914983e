#include "doctest.h"

#include "hilbert/cheeger.hpp"
#include "hilbert/markov.hpp"
#include "hilbert/net.hpp"

#include <cmath>
#include <functional>
#include <random>

using namespace hilbert;

namespace {

// m interior vertices in a row, Dirichlet vertices 0 and m+1 at the ends.
std::pair<Graph, std::vector<char>> killed_path(int m) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i <= m; ++i) e.push_back({i, i + 1});
  std::vector<char> d(m + 2, 0);
  d[0] = d[m + 1] = 1;
  return {Graph::from_edges(m + 2, e), d};
}

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, e);
}

Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph::from_edges(n, e);
}

// Full d-regular-interior tree: root has d children, others d - 1; the last
// level is Dirichlet.
std::pair<Graph, std::vector<char>> regular_tree(int d, int levels) {
  std::vector<std::pair<int, int>> e;
  std::vector<int> frontier{0};
  int n = 1;
  std::vector<int> depth{0};
  for (int l = 1; l <= levels; ++l) {
    std::vector<int> next;
    for (int v : frontier) {
      const int kids = v == 0 ? d : d - 1;
      for (int c = 0; c < kids; ++c) {
        e.push_back({v, n});
        next.push_back(n++);
        depth.push_back(l);
      }
    }
    frontier = next;
  }
  std::vector<char> mask(n, 0);
  for (int v = 0; v < n; ++v) mask[v] = depth[v] == levels;
  return {Graph::from_edges(n, e), mask};
}

// Recursive include/exclude over interior vertices, independent of the bitmask code.
double oracle_cheeger(const Graph& g, const std::vector<char>& d) {
  std::vector<int> interior;
  for (int v = 0; v < g.size(); ++v)
    if (!d[v]) interior.push_back(v);
  const int cap = std::max<int>(1, interior.size() / 2);
  double best = 1e300;
  std::vector<int> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == interior.size()) {
      if (chosen.empty() || static_cast<int>(chosen.size()) > cap) return;
      std::vector<char> in(g.size(), 0), bd(g.size(), 0);
      for (int v : chosen) in[v] = 1;
      int b = 0;
      for (int v : chosen)
        for (int w : g.neighbors(v))
          if (!in[w] && !bd[w]) {
            bd[w] = 1;
            ++b;
          }
      best = std::min(best, static_cast<double>(b) / chosen.size());
      return;
    }
    rec(i + 1);
    chosen.push_back(interior[i]);
    rec(i + 1);
    chosen.pop_back();
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("killed path spectral radius") {
  for (int m : {3, 10, 50}) {
    auto [g, d] = killed_path(m);
    const MarkovSystem sys(g, d);
    CHECK(sys.symmetry_residual() <= 1e-12);
    const auto rep = spectral_radius(sys);
    CHECK(rep.converged);
    CHECK(rep.rho == doctest::Approx(std::cos(M_PI / (m + 1))).epsilon(1e-8));
    const auto dense = dense_spectrum(sys);
    CHECK(dense.values.back() == doctest::Approx(std::cos(M_PI / (m + 1))).epsilon(1e-12));
  }
}

TEST_CASE("single interior vertex") {
  auto [g, d] = killed_path(1);
  const auto rep = spectral_radius(MarkovSystem(g, d));
  CHECK(std::abs(rep.rho) <= 1e-12);
}

TEST_CASE("return probability estimates approach rho from below") {
  auto [g, d] = killed_path(20);
  const MarkovSystem sys(g, d);
  const double rho = spectral_radius(sys).rho;
  const auto est = return_probability_estimates(sys, 400, 10);
  REQUIRE(est.size() == 200);
  for (std::size_t k = 1; k < est.size(); ++k) CHECK(est[k] >= est[k - 1] - 1e-12);
  for (double e : est) CHECK(e <= rho + 1e-9);
  CHECK(est.back() > rho - 0.02);
}

TEST_CASE("Lanczos agrees with power iteration") {
  const auto tri = make_regular_polygon(3, 1);
  const Net net = build_net(tri, tri.interior_point(), 8.0, 0.5, 1);
  const auto g = build_graph(net, default_rho(net));
  const MarkovSystem sys(g.graph, collar_dirichlet(g, 8.0));
  SpectralOptions power, lanczos;
  power.lanczos_above = 1 << 30;
  lanczos.lanczos_above = 1;
  const auto a = spectral_radius(sys, power);
  const auto b = spectral_radius(sys, lanczos);
  CHECK(a.method != b.method);
  CHECK(b.rho == doctest::Approx(a.rho).epsilon(1e-7));
}

TEST_CASE("collar truncations increase rho") {
  const auto tri = make_regular_polygon(3, 1);
  const Net net = build_net(tri, tri.interior_point(), 8.0, 0.5, 1);
  const auto g = build_graph(net, default_rho(net));
  double prev = -1;
  for (double r : {4.0, 6.0, 8.0}) {
    const double rho = spectral_radius(MarkovSystem(g.graph, collar_dirichlet(g, r))).rho;
    CHECK(rho > prev);
    CHECK(rho < 1.0);
    prev = rho;
  }
}

TEST_CASE("Cheeger constants of small graphs") {
  // K_{1,3}: two leaves have boundary {center}, ratio 1/2
  const Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto s = cheeger_graph_exact(star, {});
  CHECK(s.num == 1);
  CHECK(s.den == 2);
  CHECK(exterior_boundary_size(star, {1}) == 1);

  for (int n : {4, 5, 8, 12}) CHECK(cheeger_graph_exact(cycle(n), {}).value == doctest::Approx(2.0 / (n / 2)));
  CHECK(cheeger_graph_exact(cycle(12), {}).value == doctest::Approx(1.0 / 3.0));
  CHECK(cheeger_graph_exact(complete(5), {}).value == doctest::Approx(1.5));

  // two k-cliques joined by one edge: one clique has boundary 1
  for (int k : {3, 5}) {
    std::vector<std::pair<int, int>> e;
    for (int off : {0, k})
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) e.push_back({off + i, off + j});
    e.push_back({0, k});
    const Graph g = Graph::from_edges(2 * k, e);
    CHECK(cheeger_graph_exact(g, {}).value == doctest::Approx(1.0 / k));
    CHECK(cheeger_graph_sweep(g, {}).value == doctest::Approx(1.0 / k));
  }
}

TEST_CASE("sweep rejects a disconnected interior") {
  const Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(cheeger_graph_sweep(g, {0, 1, 0}), ValidationError);
}

TEST_CASE("exact Cheeger against recursive enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 11);
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) e.push_back({v, static_cast<int>(rng() % v)});  // spanning tree
    for (int extra = 0; extra < n; ++extra) e.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
    const Graph g = Graph::from_edges(n, e);
    std::vector<char> d(n, 0);
    for (int j = 0; j < static_cast<int>(rng() % 3); ++j) d[rng() % n] = 1;
    bool any = false;
    for (char c : d) any |= !c;
    if (!any) continue;
    const auto exact = cheeger_graph_exact(g, d);
    CHECK(exact.value == oracle_cheeger(g, d));
    CHECK(exterior_boundary_size(g, exact.set) == doctest::Approx(exact.value * exact.set.size()));
  }
}

TEST_CASE("inverse Cheeger inequality") {
  for (int levels : {4, 5}) {
    auto [g, d] = regular_tree(3, levels);
    const auto rep = inverse_cheeger_check(g, d);
    CHECK(rep.degree == 3);
    CHECK(rep.rho_method == "dirichlet");
    CHECK(rep.holds);
  }
  const auto c = inverse_cheeger_check(cycle(12), {});
  CHECK(c.rho_method == "second_eigenvalue");
  CHECK_FALSE(c.note.empty());
  CHECK(c.rho == doctest::Approx(std::cos(2 * M_PI / 12)));
  const Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK_THROWS_AS(inverse_cheeger_check(star, {}), ValidationError);
}
