#pragma once

#include "hilbert/convex_body.hpp"

#include <vector>

namespace hilbert {

/// (|q-a|/|p-a|)(|p-b|/|q-b|) for collinear a, p, q, b in that order.
double cross_ratio(const Point& a, const Point& p, const Point& q, const Point& b);

struct DistanceResult {
  double value;
  double error;  // propagated from the chord tolerance
};

/// Hilbert distance. The pair is put in a canonical order first, so
/// distance(p, q) and distance(q, p) are the same floating-point number.
double distance(const ConvexBody& body, const Point& p, const Point& q);
DistanceResult distance_with_error(const ConvexBody& body, const Point& p, const Point& q);
/// No validation; used in inner loops on points already known to be interior.
double distance_unchecked(const ConvexBody& body, const Point& p, const Point& q);

/// d(p, p + t v) from the chord parameters of p along v (A = -t_minus, B = t_plus).
double distance_along_chord(double a, double b, double t);

double finsler_norm(const ConvexBody& body, const Point& p, const Vec& v);
/// Gradient in v of F(p, v); zero-homogeneous in v.
Covector finsler_norm_gradient(const ConvexBody& body, const Point& p, const Vec& v);

struct DualNormResult {
  double value;
  double error;
  Vec argmax;  // direction with F(p, argmax) = 1 realizing the maximum
};
/// F*(p, w) = max{ w.v : F(p, v) <= 1 }. Exact for polygons and ellipsoids,
/// sampled with local refinement otherwise.
DualNormResult finsler_dual_norm(const ConvexBody& body, const Point& p, const Covector& w);
/// The sampled route, whatever the body kind (kept for cross-checks).
DualNormResult finsler_dual_norm_sampled(const ConvexBody& body, const Point& p, const Covector& w,
                                         int directions = 720);

/// Differential at x of y -> d(x0, y).
Covector distance_gradient(const ConvexBody& body, const Point& x0, const Point& x);

// Point at Hilbert distance s from x0 along the ray x0 + t u, given the chord
// parameters A = -t_minus, B = t_plus of that ray.
double ray_param_at_distance(double a, double b, double s);
double ray_param_derivative(double a, double b, double s);  // dt/ds
Point point_at_distance(const ConvexBody& body, const Point& x0, const Vec& u, double s);

struct Ball {
  Point center;
  double radius;
};

bool ball_contains(const ConvexBody& body, const Ball& ball, const Point& x);
/// Sphere S(center, radius) sampled at m equispaced Euclidean directions (2D).
std::vector<Point> ball_boundary_polyline(const ConvexBody& body, const Ball& ball, int m);

}  // namespace hilbert
