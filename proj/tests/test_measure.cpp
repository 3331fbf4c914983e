#include "doctest.h"

#include "hilbert/local_norm.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/sampling.hpp"

#include <cmath>
#include <numbers>

using namespace hilbert;

namespace {

// Grid oracle: Euclidean volume of {v : F(p, v) < 1} by counting cell centers.
double grid_unit_ball_volume(const ConvexBody& body, const Point& p, int cells) {
  const int n = body.dim();
  double reach = 0.0;
  for (const auto& u : sphere_directions(n, n == 2 ? 3600 : 20000))
    reach = std::max(reach, 1.0 / finsler_norm(body, p, u));
  reach *= 1.05;
  const double h = 2 * reach / cells;
  long long inside = 0;
  std::vector<int> idx(n, 0);
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= cells;
  Vec v(n);
  for (long long c = 0; c < total; ++c) {
    long long rem = c;
    for (int i = 0; i < n; ++i) {
      v(i) = -reach + h * (rem % cells + 0.5);
      rem /= cells;
    }
    if (finsler_norm(body, p, v) < 1.0) ++inside;
  }
  return inside * std::pow(h, n);
}

}  // namespace

TEST_CASE("unit ball volume and density") {
  const auto disk = make_ball(2);
  CHECK(std::abs(unit_ball_volume(disk, make_vec({0, 0})).value - std::numbers::pi) < 1e-13);
  CHECK(std::abs(density(disk, make_vec({0, 0})) - 1) < 1e-14);
  for (double r : {0.3, 0.9, 0.999}) {
    const double exact = std::numbers::pi * std::pow(1 - r * r, 1.5);
    CHECK(unit_ball_volume(disk, make_vec({r, 0})).value == doctest::Approx(exact).epsilon(1e-12));
    CHECK(unit_ball_volume_polar(disk, make_vec({r, 0})).value == doctest::Approx(exact).epsilon(1e-9));
    CHECK(density(disk, make_vec({r, 0})) == doctest::Approx(std::pow(1 - r * r, -1.5)).epsilon(1e-12));
  }
  // Simplex at the barycenter against the grid oracle.
  const auto tri = make_simplex(2);
  const double grid2 = grid_unit_ball_volume(tri, tri.interior_point(), 1500);
  CHECK(std::abs(unit_ball_volume(tri, tri.interior_point()).value / grid2 - 1) < 0.005);
  const auto tet = make_simplex(3);
  const double grid3 = grid_unit_ball_volume(tet, tet.interior_point(), 150);
  CHECK(std::abs(unit_ball_volume(tet, tet.interior_point()).value / grid3 - 1) < 0.01);

  // Exact polygon route against the polar route, including near the boundary.
  auto rng = make_rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& body : {make_regular_polygon(3, 1), make_regular_polygon(6, 1)}) {
    int done = 0;
    while (done < 30) {
      const Point p = make_vec({u(rng), u(rng)});
      if (!body.contains(p)) continue;
      ++done;
      const double exact = unit_ball_volume(body, p).value;
      const double polar = unit_ball_volume_polar(body, p, 1e-12, 1 << 16).value;
      CHECK(std::abs(polar / exact - 1) < 1e-6);
    }
  }
  // Positive density bounded below on a compact subset of the superellipse.
  const auto se = make_superellipse(4, 1.1);
  for (int i = 0; i < 20; ++i) {
    const Point p = make_vec({0.5 * u(rng), 0.3 * u(rng)});
    CHECK(density(se, p, 1e-8) > 0.1);
  }
}

TEST_CASE("Monte-Carlo measure") {
  const auto disk = make_ball(2);
  const Box box = ball_bounding_box(disk, make_vec({0, 0}), 1.0);
  const auto empty = measure(disk, [](const Point&) { return false; }, box, 10000, 1);
  CHECK(empty.value == 0.0);
  CHECK(empty.std_error == 0.0);
  const auto m = measure(disk, [&](const Point& x) { return distance_unchecked(disk, Point::Zero(2), x) <= 1.0; },
                         box, 200000, 5);
  const double exact = 2 * std::numbers::pi * (std::cosh(1.0) - 1);
  CHECK(std::abs(m.value / exact - 1) < 0.02);
  CHECK(std::abs(m.value - exact) <= 4 * m.std_error);
  const auto again = measure(disk, [&](const Point& x) { return distance_unchecked(disk, Point::Zero(2), x) <= 1.0; },
                             box, 200000, 5);
  CHECK(again.value == m.value);
  CHECK_THROWS_AS(measure(disk, [](const Point&) { return true; }, Box{make_vec({0, 0}), make_vec({0, 1})}, 100, 1),
                  ValidationError);
}

TEST_CASE("ball quadrature against closed forms") {
  const auto disk = make_ball(2);
  for (double r : {0.5, 2.0, 6.0, 10.0}) {
    const auto m = ball_measure(disk, make_vec({0, 0}), r);
    const double exact = 2 * std::numbers::pi * (std::cosh(r) - 1);
    CHECK(std::abs(m.value / exact - 1) < 1e-9);
  }
  // Off-center: the disk is homogeneous, so the answer does not move.
  const auto off = ball_measure(disk, make_vec({0.6, 0.2}), 3.0, {0.5, 8, 2048, 10.0});
  CHECK(std::abs(off.value / (2 * std::numbers::pi * (std::cosh(3.0) - 1)) - 1) < 1e-6);
  // The triangle geometry is a normed plane: mu(B(x, R)) = pi R^2.
  const auto tri = make_regular_polygon(3, 1);
  for (const auto& c : {tri.interior_point(), Point(make_vec({0.3, -0.3}))}) {
    for (double r : {1.0, 5.0, 12.0}) {
      const auto m = ball_measure(tri, c, r);
      CHECK(std::abs(m.value / (std::numbers::pi * r * r) - 1) < 1e-6);
    }
  }
}

TEST_CASE("lengths") {
  const auto disk = make_ball(2);
  CHECK(curve_length(disk, {make_vec({0.1, 0.1})}) == 0.0);
  CHECK(curve_length(disk, {make_vec({0, 0}), make_vec({0.5, 0})}) == doctest::Approx(0.5 * std::log(3.0)));
  CHECK_THROWS_AS(curve_length(disk, {make_vec({0, 0}), make_vec({1.5, 0})}), ValidationError);
  for (double r : {1.0, 3.0}) {
    const auto len = sphere_length(disk, make_vec({0, 0}), r);
    CHECK(std::abs(len.value / (2 * std::numbers::pi * std::sinh(r)) - 1) < 0.005);
  }
  const auto tri = make_regular_polygon(3, 1);
  for (double r : {2.0, 8.0}) {
    const auto len = sphere_length(tri, tri.interior_point(), r);
    CHECK(std::abs(len.value / (6 * r) - 1) < 1e-3);
  }
}

TEST_CASE("growth curves") {
  std::vector<double> radii;
  for (int r = 5; r <= 15; ++r) radii.push_back(r);
  const auto tri = make_regular_polygon(3, 1);
  const auto gt = growth_curve(tri, tri.interior_point(), radii);
  CHECK(gt.classification == "polynomial");
  CHECK(std::abs(gt.fit_poly_exponent - 2) < 0.01);
  for (std::size_t i = 1; i < gt.volumes.size(); ++i) CHECK(gt.volumes[i].value >= gt.volumes[i - 1].value);
  for (std::size_t i = 0; i < radii.size(); ++i)
    CHECK(std::abs(gt.volumes[i].value / (std::numbers::pi * radii[i] * radii[i]) - 1) < 1e-6);

  std::vector<double> dr{4, 5, 6, 7, 8, 9, 10, 11, 12};
  const auto gd = growth_curve(make_ball(2), make_vec({0, 0}), dr);
  CHECK(gd.classification == "exponential");
  CHECK(std::abs(gd.fit_exp_rate - 1) < 0.01);

  const auto single = growth_curve(tri, tri.interior_point(), {3.0});
  CHECK(single.classification == "undetermined");
  CHECK_THROWS_AS(growth_curve(tri, tri.interior_point(), {3.0, 2.0}), ValidationError);
}

TEST_CASE("Folner ratios and the sphere sandwich") {
  const auto disk = make_ball(2);
  const auto f = folner_ratio(disk, make_vec({0, 0}), 5.0);
  CHECK(f.ratio == doctest::Approx(std::sinh(5.0) / (std::cosh(5.0) - 1)).epsilon(0.005));
  // Small balls look Euclidean: ratio ~ 2/R.
  const auto small = folner_ratio(disk, make_vec({0, 0}), 0.01);
  CHECK(small.ratio * 0.01 == doctest::Approx(2.0).epsilon(0.01));
  const auto tri = make_regular_polygon(3, 1);
  double prev = 1e9;
  for (double r : {2.0, 4.0, 6.0}) {
    const auto fr = folner_ratio(tri, tri.interior_point(), r);
    CHECK(fr.ratio < prev);
    CHECK(fr.ratio == doctest::Approx(6 / (std::numbers::pi * r)).epsilon(1e-3));
    prev = fr.ratio;
  }
  const auto rep = sphere_area_sandwich_check(
      disk, {make_vec({0, 0}), make_vec({0.5, 0.3}), make_vec({-0.9, 0.1}), make_vec({0.0, 0.99})}, 1.0);
  CHECK(rep.spread < 1.01);
  CHECK(rep.within_cap);
  const auto rt = sphere_area_sandwich_check(tri, {tri.interior_point(), make_vec({0.0, -0.45})}, 1.0);
  CHECK(rt.within_cap);
}

TEST_CASE("two-sided ball bound") {
  for (double r : {0.25, 1.0, 3.0}) {
    const double lo = ball_measure_lower_bound(2, r), hi = ball_measure_upper_bound(2, r);
    const double disk = 2 * std::numbers::pi * (std::cosh(r) - 1), tri = std::numbers::pi * r * r;
    CHECK(lo <= disk);
    CHECK(disk <= hi);
    CHECK(lo <= tri);
    CHECK(tri <= hi);
  }
}
