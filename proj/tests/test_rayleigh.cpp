#include "doctest.h"

#include "hilbert/metric.hpp"
#include "hilbert/rayleigh.hpp"
#include "hilbert/smoothing.hpp"

#include <cmath>

using namespace hilbert;

namespace {

PointFunction bump(const ConvexBody& body, const Point& x0, double r, double h) {
  return [&body, x0, r, h](const Point& x) {
    const double s = distance(body, x0, x);
    return s >= r ? 0.0 : std::exp(-0.5 * h * s) - std::exp(-0.5 * h * r);
  };
}

}  // namespace

TEST_CASE("tent on the triangle gives 6/R^2") {
  const auto tri = make_regular_polygon(3, 1);
  const auto rep = lambda1_upper_estimate(tri, tri.interior_point(), {tent_eps(2)}, {4.0, 8.0});
  CHECK(rep.estimate_at(4.0) == doctest::Approx(6.0 / 16).epsilon(1e-3));
  CHECK(rep.estimate_at(8.0) == doctest::Approx(6.0 / 64).epsilon(1e-3));
  CHECK(rep.dual_norm_exact);
  CHECK_THROWS_AS(rep.estimate_at(5.0), ValidationError);
}

TEST_CASE("tiny tent is Euclidean") {
  const auto disk = make_ball(2);
  const Point c = disk.interior_point();
  const double r = 0.01;
  const auto f = [&](const Point& x) { return std::max(0.0, r - distance(disk, c, x)); };
  const auto q = rayleigh_quotient(disk, f, {}, r, c);
  CHECK(q.value * r * r == doctest::Approx(6.0).epsilon(1e-3));
}

TEST_CASE("quotient is invariant under scaling f") {
  const auto disk = make_ball(2);
  const Point c = disk.interior_point();
  const auto f = bump(disk, c, 3.0, 1.0);
  const auto g = [&](const Point& x) { return 7.5 * f(x); };
  const double a = rayleigh_quotient(disk, f, {}, 3.0, c).value;
  const double b = rayleigh_quotient(disk, g, {}, 3.0, c).value;
  CHECK(std::abs(a - b) <= 1e-10 * a);
}

TEST_CASE("disk quotients stay above 1/4") {
  const auto disk = make_ball(2);
  Point off(2);
  off << 0.3, -0.2;
  for (const Point& c : {disk.interior_point(), off}) {
    for (double h : {0.9, 1.0, 1.25}) {
      const auto q = rayleigh_quotient(disk, bump(disk, c, 4.0, h), {}, 4.0, c);
      CHECK(q.value >= 0.25 - q.quadrature_error - 0.02);
    }
  }
}

TEST_CASE("steep members approach h^2/4") {
  const auto disk = make_ball(2);
  const auto rep = lambda1_upper_estimate(disk, disk.interior_point(), {4.0}, {12.0});
  const double h = 5.0;
  CHECK(rep.lambda_estimate / (h * h / 4) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("f must vanish outside the ball") {
  const auto disk = make_ball(2);
  const auto f = [](const Point&) { return 1.0; };
  CHECK_THROWS_AS(rayleigh_quotient(disk, f, {}, 2.0, disk.interior_point()), ValidationError);
  CHECK_THROWS_AS(lambda1_upper_estimate(disk, disk.interior_point(), {-2.0}, {4.0}), ValidationError);
}

TEST_CASE("smoothing is a partition of unity") {
  const auto tri = make_regular_polygon(3, 1);
  const Net net = build_net(tri, tri.interior_point(), 4.0, 0.5, 3);
  const auto g = build_graph(net, default_rho(net));
  const Smoother one(g, std::vector<double>(net.size(), 1.0));
  for (const auto& p : ball_probes(tri, tri.interior_point(), 4.0, 200, 8))
    CHECK(one(p) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> ind(net.size(), 0.0);
  ind[5] = 1.0;
  const Smoother s(g, ind);
  for (const auto& p : ball_probes(tri, tri.interior_point(), 4.0, 400, 9)) {
    const double v = s(p);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
    if (distance(tri, p, net.points[5]) >= 2 * g.rho) CHECK(v == 0.0);
  }

  // far outside the net nothing reaches
  const Point far = point_at_distance(tri, tri.interior_point(), Vec::Unit(2, 0), 4.0 + 3 * g.rho);
  CHECK_THROWS_AS(one(far), ValidationError);

  CHECK(dirichlet_form_ratio(g.graph, std::vector<double>(net.size(), 2.0)) == doctest::Approx(0.0));
  CHECK(dirichlet_form_ratio(g.graph, ind) == doctest::Approx(1.0));
}
