#pragma once

#include "hilbert/convex_body.hpp"

#include <vector>

namespace hilbert {

// The Finsler norm of a polygon at p is the support function of the symmetric
// polygon Z = (P° + (-P°))/2, where P° is the polar of the body about p.
// Its unit ball is the polar Z°, so area and dual norm are exact.
struct PolygonNorm {
  std::vector<Vec> z;         // vertices of Z, counter-clockwise
  std::vector<Vec> z_polar;   // vertices of Z° (the unit ball), counter-clockwise
  double norm(const Vec& v) const;       // support function of Z
  double dual_norm(const Vec& w) const;  // support function of Z°
  double unit_ball_area() const;
};
PolygonNorm polygon_norm(const ConvexBody& body, const Point& p);
/// Same, from the facet slacks b_i - n_i.p (all positive).
PolygonNorm polygon_norm_from_slacks(const ConvexBody& body, const std::vector<double>& slacks);

// For an ellipsoid the norm is Euclidean: F(p, v)^2 = v^T Q v.
Mat ellipsoid_norm_matrix(const ConvexBody& body, const Point& p);

/// 2D frame L with {F(p, .) < 1} roughly L(unit disk): exact for ellipsoids,
/// second moments of the unit ball for polygons, a radius search otherwise.
Mat unit_ball_frame(const ConvexBody& body, const Point& p);

struct VolumeEstimate {
  double value;
  double error;
  int directions;
};

/// Euclidean volume of the Finsler unit ball {v : F(p, v) < 1}.
VolumeEstimate unit_ball_volume(const ConvexBody& body, const Point& p, double rel_tol = 1e-10);
/// The polar-formula route regardless of body kind. In 2D the integral runs
/// in a frame adapted to the unit ball, which keeps thin balls resolved.
VolumeEstimate unit_ball_volume_polar(const ConvexBody& body, const Point& p, double rel_tol = 1e-10,
                                      int max_directions = 4096);

/// Busemann-Hausdorff density omega_n / Vol(B(p)).
double density(const ConvexBody& body, const Point& p, double rel_tol = 1e-10);

}  // namespace hilbert
