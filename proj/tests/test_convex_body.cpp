#include "doctest.h"

#include "hilbert/convex_body.hpp"
#include "hilbert/sampling.hpp"

#include <cmath>
#include <numbers>

using namespace hilbert;

namespace {

ConvexBody unit_triangle() {
  return ConvexBody::polygon({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})}, "unit_triangle");
}

}  // namespace

TEST_CASE("containment") {
  const auto disk = make_ball(2);
  CHECK(disk.contains(make_vec({0, 0})));
  CHECK_FALSE(disk.contains(make_vec({1, 0})));
  CHECK(disk.contains(make_vec({0.99, 0})));
  CHECK_FALSE(disk.contains(make_vec({1.01, 0})));
  CHECK(unit_triangle().contains(make_vec({0.25, 0.25})));
  CHECK_THROWS_AS(disk.contains(make_vec({0, 0, 0})), ValidationError);
}

TEST_CASE("chords by hand") {
  const auto disk = make_ball(2);
  auto c = disk.chord(make_vec({0, 0}), make_vec({1, 0}));
  CHECK((c.p_minus - make_vec({-1, 0})).norm() < 1e-15);
  CHECK((c.p_plus - make_vec({1, 0})).norm() < 1e-15);

  c = unit_triangle().chord(make_vec({0.25, 0.25}), make_vec({1, 0}));
  CHECK((c.p_minus - make_vec({0, 0.25})).norm() < 1e-15);
  CHECK((c.p_plus - make_vec({0.75, 0.25})).norm() < 1e-15);

  Mat shape(2, 2);
  shape << 4, 0, 0, 1;
  const auto ell = ConvexBody::ellipsoid(make_vec({0, 0}), shape);
  c = ell.chord(make_vec({0, 0}), make_vec({1, 0}));
  CHECK((c.p_plus - make_vec({2, 0})).norm() < 1e-14);

  CHECK_THROWS_AS(disk.chord(make_vec({0, 0}), make_vec({0, 0})), ValidationError);
  CHECK_THROWS_AS(disk.chord(make_vec({2, 0}), make_vec({1, 0})), ValidationError);
}

TEST_CASE("chord invariants on every body kind") {
  std::vector<ConvexBody> bodies{make_ball(2), make_regular_polygon(3, 1), make_regular_polygon(6, 1),
                                 make_superellipse(4, 1.1), make_simplex(3), make_ball(3)};
  auto rng = make_rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& body : bodies) {
    int tested = 0;
    while (tested < 200) {
      Point p(body.dim());
      for (int i = 0; i < body.dim(); ++i) p(i) = u(rng) * body.bounding_radius();
      if (!body.contains(p)) continue;
      Vec v(body.dim());
      for (int i = 0; i < body.dim(); ++i) v(i) = u(rng);
      const Chord c = body.chord(p, v);
      const Chord r = body.chord(p, Vec(-v));
      CHECK((c.p_plus - r.p_minus).norm() <= 1e-12 * body.bounding_radius());
      CHECK((c.p_minus - r.p_plus).norm() <= 1e-12 * body.bounding_radius());
      // p between the endpoints on the line.
      const Vec d = c.p_plus - c.p_minus;
      const double lam = (c.p_plus - p).dot(d) / d.squaredNorm();
      CHECK(lam > 0.0);
      CHECK(lam < 1.0);
      CHECK((lam * c.p_minus + (1 - lam) * c.p_plus - p).norm() <= 1e-9);
      // Endpoints sit on the boundary: just inside is inside, just outside is not.
      const Vec step = 1e-8 * body.bounding_radius() * d / d.norm();
      CHECK(body.contains(Point(c.p_plus - step)));
      CHECK_FALSE(body.contains(Point(c.p_plus + step)));
      ++tested;
    }
  }
}

TEST_CASE("superellipse boundary residual") {
  const auto body = make_superellipse(4, 1.1);
  for (int i = 0; i < 64; ++i) {
    const double th = 2 * std::numbers::pi * i / 64;
    const Chord c = body.chord(make_vec({0.1, -0.05}), make_vec({std::cos(th), std::sin(th)}));
    const double g = std::pow(std::abs(c.p_plus(0)), 4) + std::pow(std::abs(c.p_plus(1)), 1.1);
    CHECK(std::abs(g - 1.0) < 1e-10);
  }
}

TEST_CASE("named constructors") {
  const auto tri = make_regular_polygon(3, 1);
  REQUIRE(tri.vertices().size() == 3);
  CHECK(std::abs(tri.vertices()[0](0)) < 1e-15);
  CHECK(std::abs(tri.vertices()[0](1) - 1) < 1e-15);
  CHECK_THROWS_AS(make_regular_polygon(2, 1), ValidationError);
  CHECK_THROWS_AS(make_superellipse(0.5, 2), ValidationError);
  CHECK_THROWS_AS(ConvexBody::polygon({make_vec({0, 0}), make_vec({1, 1}), make_vec({2, 2})}), ValidationError);
  const auto s3 = make_simplex(3);
  CHECK(s3.facet_normals().size() == 4);
  for (const auto& v : s3.vertices()) CHECK(std::abs(v.norm() - 1) < 1e-12);
}

TEST_CASE("projective transforms") {
  ProjMatrix id = ProjMatrix::Identity(3, 3);
  auto rng = make_rng(3);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (const auto& body : {make_ball(2), make_regular_polygon(3, 1), make_superellipse(4, 1.1)}) {
    const auto same = body.projective_transform(id);
    for (int i = 0; i < 1000; ++i) {
      const Point x = make_vec({u(rng), u(rng)});
      CHECK(same.contains(x) == body.contains(x));
    }
  }
  ProjMatrix diag = ProjMatrix::Identity(3, 3);
  diag(0, 0) = 2.0;
  diag(1, 1) = 0.5;
  const auto tri = make_regular_polygon(3, 1).projective_transform(diag);
  CHECK(tri.contains(make_vec({0.0, 0.0})));
  CHECK(tri.contains(make_vec({1.5, -0.2})));
  CHECK_FALSE(tri.contains(make_vec({0.0, 0.6})));

  ProjMatrix bad = ProjMatrix::Identity(3, 3);
  bad(2, 0) = 2.0;  // w = 2x + 1 vanishes inside the disk
  CHECK_THROWS_AS(make_ball(2).projective_transform(bad), ValidationError);
  CHECK_THROWS_AS(make_regular_polygon(3, 1).projective_transform(bad), ValidationError);
}
