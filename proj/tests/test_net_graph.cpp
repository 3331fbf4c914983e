#include "doctest.h"

#include "hilbert/graph.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/net.hpp"

#include <algorithm>
#include <cmath>

using namespace hilbert;

namespace {

double min_pairwise(const Net& net) {
  double best = 1e300;
  for (int i = 0; i < net.size(); ++i)
    for (int j = i + 1; j < net.size(); ++j)
      best = std::min(best, distance(*net.body, net.points[i], net.points[j]));
  return best;
}

double farthest_probe(const Net& net, const std::vector<Point>& probes) {
  double worst = 0;
  for (const auto& p : probes) {
    double near = 1e300;
    for (const auto& x : net.points) near = std::min(near, distance(*net.body, p, x));
    worst = std::max(worst, near);
  }
  return worst;
}

}  // namespace

TEST_CASE("nets are separated and covering (brute force)") {
  for (const auto& body : {make_regular_polygon(3, 1), make_ball(2), make_regular_polygon(6, 1)}) {
    const Net net = build_net(body, body.interior_point(), 3.0, 0.5, 7);
    CHECK(net.size() > 10);
    CHECK(min_pairwise(net) >= 0.5);
    const auto probes = ball_probes(body, body.interior_point(), 3.0, 2000, 99);
    CHECK(farthest_probe(net, probes) <= 0.5);
    for (std::size_t i = 0; i < net.points.size(); ++i)
      CHECK(net.radial[i] == doctest::Approx(distance(body, body.interior_point(), net.points[i])).epsilon(1e-12));
  }
}

TEST_CASE("domain smaller than eps") {
  const auto tri = make_regular_polygon(3, 1);
  const Net net = build_net(tri, tri.interior_point(), 0.3, 0.5, 1);
  REQUIRE(net.size() == 1);
  CHECK((net.points[0] - tri.interior_point()).norm() == 0.0);
  const auto g = build_graph(net, default_rho(net));
  CHECK(g.graph.size() == 1);
  CHECK(is_connected(g.graph));
}

TEST_CASE("net growth: polygon against disk") {
  const auto tri = make_regular_polygon(3, 1);
  const auto disk = make_ball(2);
  auto size = [](const ConvexBody& b, double r) { return build_net(b, b.interior_point(), r, 0.5, 3).size(); };
  const double tri_ratio = static_cast<double>(size(tri, 6.0)) / size(tri, 3.0);
  const double disk_ratio = static_cast<double>(size(disk, 6.0)) / size(disk, 3.0);
  // area ratios: (6/3)^2 = 4 for the triangle, ~e^3 = 20 for the disk
  CHECK(tri_ratio < 6.0);
  CHECK(disk_ratio > 10.0);
}

TEST_CASE("index queries match brute force") {
  for (const auto& body : {make_regular_polygon(3, 1), make_ball(2)}) {
    const Net net = build_net(body, body.interior_point(), 4.0, 0.5, 5);
    const NetIndex index = net.index();
    const auto queries = ball_probes(body, body.interior_point(), 4.5, 60, 17);
    for (const auto& q : queries) {
      for (double r : {0.3, 1.0, 2.5}) {
        std::vector<int> brute;
        for (int i = 0; i < net.size(); ++i)
          if (distance(body, q, net.points[i]) <= r) brute.push_back(i);
        CHECK(index.within(q, r) == brute);
      }
    }
  }
}

TEST_CASE("same seed, same net") {
  const auto disk = make_ball(2);
  const Net a = build_net(disk, disk.interior_point(), 3.0, 0.5, 11);
  const Net b = build_net(disk, disk.interior_point(), 3.0, 0.5, 11);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) CHECK((a.points[i] - b.points[i]).norm() == 0.0);
}

TEST_CASE("graph basics") {
  const Graph g = Graph::from_edges(5, {{0, 1}, {1, 0}, {1, 2}, {2, 2}, {2, 3}});
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 2);
  CHECK(g.adjacent(0, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(bfs_distances(g, 0) == std::vector<int>{0, 1, 2, 3, -1});
  CHECK_FALSE(is_connected(g));
  CHECK(graph_ball_sizes(g, 0, 3) == std::vector<long long>{1, 2, 3, 4});
}

TEST_CASE("discretization graph") {
  const auto tri = make_regular_polygon(3, 1);
  const Net net = build_net(tri, tri.interior_point(), 4.0, 0.5, 2);
  const auto g = build_graph(net, default_rho(net));
  CHECK(is_connected(g.graph));
  // edges exactly at 0 < d <= 3 rho
  for (int v = 0; v < g.graph.size(); v += 7)
    for (int w = 0; w < g.graph.size(); ++w) {
      if (v == w) continue;
      const bool near = distance(tri, net.points[v], net.points[w]) <= 3 * g.rho;
      CHECK(g.graph.adjacent(v, w) == near);
    }
  CHECK_THROWS_AS(build_graph(net, 0.5 * net.epsilon), ValidationError);

  const auto a = quasi_isometry_report(g, 300, 1);
  const auto b = quasi_isometry_report(g, 300, 2);
  CHECK(a.a_lower <= 3 * g.rho + 1e-12);
  CHECK(a.max_dc_over_rho_dg <= 3.0 + 1e-12);
  // constants are stable across pair samples
  CHECK(b.a_upper == doctest::Approx(a.a_upper).epsilon(0.2));
  CHECK(b.a_lower == doctest::Approx(a.a_lower).epsilon(0.2));
}
