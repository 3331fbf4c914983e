#include "doctest.h"

#include "hilbert/horoball.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/sampling.hpp"

#include <cmath>
#include <numbers>

using namespace hilbert;

namespace {

ConvexBody unit_triangle() {
  return ConvexBody::polygon({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})}, "unit_triangle");
}

Point random_interior(const ConvexBody& body, std::mt19937_64& rng, double shrink = 1.0) {
  std::uniform_real_distribution<double> u(-1, 1);
  while (true) {
    Point p(body.dim());
    for (int i = 0; i < body.dim(); ++i) p(i) = u(rng) * body.bounding_radius();
    if (body.contains(p) && body.contains(Point(body.interior_point() + (p - body.interior_point()) / shrink)))
      return p;
  }
}

}  // namespace

TEST_CASE("cross ratio") {
  CHECK(cross_ratio(make_vec({-1, 0}), make_vec({0, 0}), make_vec({0.5, 0}), make_vec({1, 0})) ==
        doctest::Approx(3.0).epsilon(1e-15));
  CHECK(cross_ratio(make_vec({0, 0}), make_vec({1, 0}), make_vec({2, 0}), make_vec({4, 0})) ==
        doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(cross_ratio(make_vec({-1, 0}), make_vec({0, 0}), make_vec({0, 0}), make_vec({1, 0})),
                  ValidationError);
  CHECK_THROWS_AS(cross_ratio(make_vec({-1, 0}), make_vec({0, 0.1}), make_vec({0.5, 0}), make_vec({1, 0})),
                  ValidationError);
  CHECK_THROWS_AS(cross_ratio(make_vec({-1, 0}), make_vec({0.5, 0}), make_vec({0, 0}), make_vec({1, 0})),
                  ValidationError);
}

TEST_CASE("distance examples") {
  const auto disk = make_ball(2);
  CHECK(std::abs(distance(disk, make_vec({0, 0}), make_vec({0.5, 0})) - 0.5 * std::log(3.0)) < 1e-15);
  CHECK(distance(disk, make_vec({0.3, 0.2}), make_vec({0.3, 0.2})) == 0.0);
  CHECK(std::abs(distance(unit_triangle(), make_vec({0.25, 0.25}), make_vec({0.5, 0.25})) - std::log(2.0)) <
        1e-15);
  for (int i = 1; i <= 9; ++i) {
    const double t = 0.1 * i;
    CHECK(std::abs(distance(disk, make_vec({0, 0}), make_vec({t, 0})) - std::atanh(t)) <= 1e-9);
  }
  CHECK_THROWS_AS(distance(disk, make_vec({0, 0}), make_vec({1, 0})), ValidationError);
  // Sublevel bodies report a nonzero propagated error.
  const auto se = make_superellipse(4, 1.1);
  const auto r = distance_with_error(se, make_vec({0, 0}), make_vec({0.5, 0.3}));
  CHECK(r.error > 0.0);
  CHECK(r.error < 1e-9);
}

TEST_CASE("metric axioms") {
  auto rng = make_rng(11);
  for (const auto& body : {make_ball(2), make_regular_polygon(3, 1), make_regular_polygon(6, 1),
                           make_superellipse(4, 1.1), make_simplex(3)}) {
    for (int i = 0; i < 1000; ++i) {
      const Point p = random_interior(body, rng), q = random_interior(body, rng), r = random_interior(body, rng);
      const double pq = distance(body, p, q);
      CHECK(pq == distance(body, q, p));
      CHECK(pq > 0.0);
      CHECK(pq <= distance(body, p, r) + distance(body, r, q) + 1e-8);
    }
  }
}

TEST_CASE("straight segments are geodesics") {
  auto rng = make_rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& body : {make_ball(2), make_regular_polygon(3, 1), make_superellipse(4, 1.1)}) {
    for (int i = 0; i < 200; ++i) {
      const Point p = random_interior(body, rng), q = random_interior(body, rng);
      const Point m = p + u(rng) * (q - p);
      const double tol = body.kind() == BodyKind::sublevel ? 1e-8 : 1e-9;
      CHECK(std::abs(distance(body, p, m) + distance(body, m, q) - distance(body, p, q)) <= tol);
    }
  }
}

TEST_CASE("projective invariance") {
  auto rng = make_rng(13);
  std::normal_distribution<double> g(0, 0.15);
  for (const auto& body : {make_ball(2), make_regular_polygon(3, 1)}) {
    int maps = 0;
    while (maps < 10) {
      ProjMatrix m = ProjMatrix::Identity(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) += g(rng);
      ConvexBody image = body;
      try {
        image = body.projective_transform(m);
      } catch (const ValidationError&) {
        continue;
      }
      ++maps;
      for (int k = 0; k < 100; ++k) {
        const Point p = random_interior(body, rng), q = random_interior(body, rng);
        const double d0 = distance(body, p, q);
        const double d1 = distance(image, apply_projective(m, p), apply_projective(m, q));
        CHECK(std::abs(d0 - d1) <= 1e-6);
      }
    }
  }
}

TEST_CASE("Finsler norm") {
  const auto disk = make_ball(2);
  for (int i = 0; i < 8; ++i) {
    const double th = 0.7 * i;
    CHECK(std::abs(finsler_norm(disk, make_vec({0, 0}), make_vec({std::cos(th), std::sin(th)})) - 1) < 1e-15);
  }
  for (double r : {0.1, 0.5, 0.9, 0.99}) {
    CHECK(finsler_norm(disk, make_vec({r, 0}), make_vec({1, 0})) == doctest::Approx(1 / (1 - r * r)).epsilon(1e-13));
  }
  CHECK(finsler_norm(disk, make_vec({0.2, 0}), make_vec({0, 0})) == 0.0);

  // Infinitesimal compatibility with the distance, with Richardson extrapolation.
  auto rng = make_rng(14);
  for (const auto& body : {make_ball(2), make_regular_polygon(3, 1), make_superellipse(4, 1.1)}) {
    for (int i = 0; i < 50; ++i) {
      const Point p = random_interior(body, rng, 0.9);
      Vec v = make_vec({std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng)});
      const double f = finsler_norm(body, p, v);
      const double d1 = distance(body, p, Point(p + 1e-4 * v)) / 1e-4;
      const double d2 = distance(body, p, Point(p + 1e-5 * v)) / 1e-5;
      const double rich = d2 + (d2 - d1) / 9.0;
      CHECK(std::abs(rich - f) <= 1e-5 * std::max(1.0, f));
    }
  }
}

TEST_CASE("norm gradient and distance gradient") {
  auto rng = make_rng(15);
  for (const auto& body : {make_ball(2), make_regular_polygon(3, 1), make_superellipse(4, 1.1)}) {
    for (int i = 0; i < 50; ++i) {
      const Point x0 = random_interior(body, rng, 0.8), x = random_interior(body, rng, 0.8);
      const Covector g = distance_gradient(body, x0, x);
      const double h = 1e-6;
      for (int k = 0; k < 2; ++k) {
        Vec e = Vec::Zero(2);
        e(k) = h;
        const double fd = (distance(body, x0, Point(x + e)) - distance(body, x0, Point(x - e))) / (2 * h);
        CHECK(std::abs(fd - g(k)) <= 1e-5 * std::max(1.0, std::abs(g(k))));
      }
      // The distance function is 1-Lipschitz and realizes its Lipschitz constant.
      CHECK(std::abs(finsler_dual_norm(body, x, g).value - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("dual norm") {
  const auto disk = make_ball(2);
  CHECK(std::abs(finsler_dual_norm(disk, make_vec({0, 0}), make_vec({1, 0})).value - 1) < 1e-14);
  for (double r : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(finsler_dual_norm(disk, make_vec({r, 0}), make_vec({1, 0})).value - (1 - r * r)) < 1e-12);
    CHECK(std::abs(finsler_dual_norm_sampled(disk, make_vec({r, 0}), make_vec({1, 0})).value - (1 - r * r)) < 1e-9);
  }
  auto rng = make_rng(16);
  std::normal_distribution<double> g(0, 1);
  for (const auto& body : {make_ball(2), make_regular_polygon(3, 1), make_regular_polygon(6, 1),
                           make_superellipse(4, 1.1)}) {
    for (int i = 0; i < 100; ++i) {
      const Point p = random_interior(body, rng);
      const Vec v = make_vec({g(rng), g(rng)});
      const Covector w = make_vec({g(rng), g(rng)});
      const auto dn = finsler_dual_norm(body, p, w);
      CHECK(std::abs(finsler_dual_norm(body, p, Covector(2 * w)).value - 2 * dn.value) <= 1e-12 * dn.value);
      // w.v <= F(v) F*(w), with equality at the maximizer.
      CHECK(w.dot(v) <= finsler_norm(body, p, v) * dn.value * (1 + 1e-12));
      CHECK(std::abs(finsler_norm(body, p, dn.argmax) - 1) < 1e-9);
      CHECK(w.dot(dn.argmax) >= 0.99 * dn.value);
      if (body.kind() == BodyKind::polytope) {
        const auto sampled = finsler_dual_norm_sampled(body, p, w);
        CHECK(std::abs(sampled.value - dn.value) <= 1e-9 * dn.value);
      }
    }
  }
  CHECK_THROWS_AS(finsler_dual_norm(disk, make_vec({1, 0}), make_vec({1, 0})), ValidationError);
}

TEST_CASE("ball polylines") {
  const auto disk = make_ball(2);
  const auto center_only = ball_boundary_polyline(disk, {make_vec({0.1, 0}), 0.0}, 16);
  REQUIRE(center_only.size() == 1);
  CHECK(center_only[0] == make_vec({0.1, 0}));
  for (double r : {0.5, 2.0, 6.0}) {
    for (const auto& p : ball_boundary_polyline(disk, {make_vec({0, 0}), r}, 64))
      CHECK(std::abs(p.norm() - std::tanh(r)) <= 1e-9);
  }
  // Triangle ball: convex polygon, and agrees with brute-force membership.
  const auto tri = make_regular_polygon(3, 1);
  const Ball ball{make_vec({0.05, -0.1}), 1.5};
  const auto poly = ball_boundary_polyline(tri, ball, 256);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec a = poly[(i + 1) % poly.size()] - poly[i];
    const Vec b = poly[(i + 2) % poly.size()] - poly[(i + 1) % poly.size()];
    CHECK(a(0) * b(1) - a(1) * b(0) >= -1e-15);
    CHECK(std::abs(distance(tri, ball.center, poly[i]) - ball.radius) < 1e-12);
  }
  auto rng = make_rng(17);
  for (int i = 0; i < 2000; ++i) {
    const Point x = random_interior(tri, rng);
    const Vec d = x - ball.center;
    const double th = std::atan2(d(1), d(0));
    const Vec u = make_vec({std::cos(th), std::sin(th)});
    const double boundary = (point_at_distance(tri, ball.center, u, ball.radius) - ball.center).norm();
    if (std::abs(d.norm() - boundary) < 1e-9) continue;
    CHECK(ball_contains(tri, ball, x) == (d.norm() < boundary));
  }
}

TEST_CASE("Busemann functions and horoballs") {
  const auto disk = make_ball(2);
  const Point base = make_vec({1, 0}), anchor = make_vec({0, 0});
  CHECK(busemann(disk, base, anchor, anchor) == 0.0);
  for (double t : {-0.5, 0.1, 0.5, 0.9}) {
    CHECK(std::abs(busemann(disk, base, anchor, make_vec({t, 0})) + std::atanh(t)) < 1e-5);
  }
  const HoroballSpec spec{base, anchor};
  CHECK(horoball_contains(disk, spec, anchor));
  CHECK(horoball_contains(disk, spec, make_vec({0.3, 0.1})));
  CHECK_FALSE(horoball_contains(disk, spec, make_vec({-0.2, 0.0})));
  CHECK_THROWS_AS(busemann(disk, make_vec({0.5, 0}), anchor, anchor), ValidationError);

  // Balls centered on [anchor, base) through the anchor are nested inside the horoball.
  const auto tri = make_regular_polygon(3, 1);
  const Point tb = make_vec({0.0, -0.5});  // midpoint of the bottom edge
  const Point ta = tri.interior_point();
  auto rng = make_rng(18);
  for (double s : {0.3, 0.6, 0.9}) {
    const Point z = ta + s * (tb - ta);
    const Ball ball{z, distance(tri, z, ta)};
    const Point z2 = ta + (s + 0.05) * (tb - ta);
    const Ball bigger{z2, distance(tri, z2, ta)};
    for (int i = 0; i < 100; ++i) {
      const Point x = random_interior(tri, rng);
      if (!ball_contains(tri, ball, x)) continue;
      CHECK(busemann(tri, tb, ta, x) <= 1e-6);
      CHECK(ball_contains(tri, bigger, x));
    }
  }
  // Points on the sphere S(z, d(z, anchor)) with z near the base are near level 0.
  const Point z = ta + (1 - 1e-4) * (tb - ta);
  for (const auto& x : ball_boundary_polyline(tri, {z, distance(tri, z, ta)}, 32)) {
    const double b = busemann(tri, tb, ta, x);
    CHECK(b <= 1e-6);
    if ((x - ta).norm() < 0.3) CHECK(std::abs(b) < 1e-2);
  }
  const auto horo = horosphere_polyline(tri, {tb, ta}, 64);
  CHECK(horo.size() == 64);
  for (const auto& x : horo) CHECK(busemann(tri, tb, ta, x) < 1e-5);
}
