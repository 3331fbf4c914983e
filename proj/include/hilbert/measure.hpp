#pragma once

#include "hilbert/ball_quadrature.hpp"
#include "hilbert/convex_body.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hilbert {

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double ci95 = 0.0;         // half-width; for quadrature this is the error estimate
  std::string method;        // "quadrature" or "monte_carlo"
  long long samples = 0;
};

struct Box {
  Point lo;
  Point hi;
};

using Region = std::function<bool(const Point&)>;

/// Monte-Carlo integral of the density over a region inside the body.
/// Jittered stratified grid over the box, split into independent replicates
/// whose spread gives the standard error. Deterministic for a fixed seed.
MeasureEstimate measure(const ConvexBody& body, const Region& region, const Box& box, long long samples,
                        std::uint64_t seed, int replicates = 16);

/// Axis box containing the Hilbert ball (2D: from the sphere polyline, padded).
Box ball_bounding_box(const ConvexBody& body, const Point& x0, double radius);

/// mu(B(x0, R)) by the product rule of ball_nodes; the error estimate is the
/// difference to a rerun at half resolution.
MeasureEstimate ball_measure(const ConvexBody& body, const Point& x0, double radius,
                             const QuadratureOptions& opt = {});

/// Hilbert length of a polyline: sum of the distances between consecutive
/// vertices, which is exact on each straight segment.
double curve_length(const ConvexBody& body, const std::vector<Point>& polyline, bool closed = false);

struct LengthEstimate {
  double value = 0.0;
  double richardson = 0.0;  // extrapolation from the last two resolutions
  double rel_change = 0.0;
  long long vertices = 0;
};
/// Length of S(x0, R) (2D), with the resolution doubled until the relative
/// change drops below rel_tol: inscribed polylines over the direction chart
/// for polygons, the integral of the Finsler norm of the tangent otherwise.
LengthEstimate sphere_length(const ConvexBody& body, const Point& x0, double radius, double rel_tol = 1e-4,
                             long long max_vertices = 1 << 21);
/// The sphere polyline itself at a given vertex count.
std::vector<Point> sphere_polyline(const ConvexBody& body, const Point& x0, double radius, long long m);

struct GrowthCurve {
  std::vector<double> radii;
  std::vector<MeasureEstimate> volumes;
  double fit_poly_exponent = 0.0;
  double fit_exp_rate = 0.0;
  double poly_residual = 0.0;
  double exp_residual = 0.0;
  std::string classification;  // polynomial, exponential, undetermined
};
GrowthCurve growth_curve(const ConvexBody& body, const Point& x0, const std::vector<double>& radii,
                         const QuadratureOptions& opt = {});
/// The fits alone, on the upper half of the radius range.
void classify_growth(GrowthCurve& curve);

struct FolnerPoint {
  double radius;
  double length;
  double volume;
  double ratio;
};
FolnerPoint folner_ratio(const ConvexBody& body, const Point& x0, double radius);

struct SandwichReport {
  double r;
  std::vector<double> lengths;
  double min_length;
  double max_length;
  double spread;  // max/min
  bool within_cap;
};
SandwichReport sphere_area_sandwich_check(const ConvexBody& body, const std::vector<Point>& centers, double r,
                                          double cap = 100.0);

// Two-sided bound on mu(B(x, r)) valid in every Hilbert geometry of dimension n.
double ball_measure_lower_bound(int n, double r);
double ball_measure_upper_bound(int n, double r);

}  // namespace hilbert
