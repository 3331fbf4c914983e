#pragma once

#include "hilbert/convex_body.hpp"

#include <vector>

namespace hilbert {

/// One direction of a polar rule about x0: the unit direction, its angular
/// weight, and the chord parameters A = -t_minus, B = t_plus along it.
struct DirectionNode {
  Vec u;
  double weight;
  double a;
  double b;
};

// Parametrization of the directions seen from x0 (2D).
//
// Smooth bodies use the angle. Polygons are parametrized through their
// boundary: on the edge [V_j, V_j+1] the point V_j + lambda (V_j+1 - V_j) with
// lambda = (1 + tanh zeta)/2, zeta in [-Z, Z]. Large Hilbert balls put almost
// all of their mass in angular windows of width ~exp(-2R) around the vertex
// directions; in zeta these windows have width O(1).
class DirectionChart {
 public:
  DirectionChart(const ConvexBody& body, const Point& x0, double zeta_max);

  bool boundary_chart() const { return polygon_; }
  /// Unit direction for a global parameter in [0, 1), monotone along the boundary.
  Vec direction(double param) const;
  /// Product rule: Gauss panels of `panel` width in zeta (polygons) or the
  /// trapezoid with `angles` points (smooth bodies).
  std::vector<DirectionNode> nodes(double panel, int order, int angles) const;

 private:
  const ConvexBody* body_;
  Point x0_;
  bool polygon_;
  double zeta_max_;
};

struct QuadratureOptions {
  double panel = 0.5;     // width of Gauss panels, in zeta and in Hilbert radius
  int order = 8;          // Gauss-Legendre order per panel (4, 8 or 16)
  int angles = 512;       // trapezoid points for smooth bodies
  double zeta_pad = 10.0;  // polygon chart range Z = R + zeta_pad; the tail beyond it is ~e^{-2 pad}
  double density_tol = 1e-8;  // relative tolerance of the numeric density (smooth sublevel bodies only)
};

inline constexpr double kMaxQuadratureRadius = 18.0;

/// Nodes of a product rule for B(x0, R_max) in (direction, Hilbert radius).
/// `breakpoints` are forced panel boundaries in the radius, so every ball
/// B(x0, r) with r a breakpoint is integrated exactly by a subset of nodes.
struct BallNodes {
  std::vector<Point> x;
  std::vector<double> s;           // Hilbert distance d(x0, x)
  std::vector<double> weight;      // measure weight: chart * Gauss * density * t dt/ds
  std::vector<double> geometric;   // the same without the density factor
  std::vector<double> density;
};
BallNodes ball_nodes(const ConvexBody& body, const Point& x0, double r_max,
                     const std::vector<double>& breakpoints, const QuadratureOptions& opt);

/// Density at x0 + t(s) u computed from the chord parameters of the ray, which
/// keeps the slack to the boundary accurate when it is tiny.
double density_on_ray(const ConvexBody& body, const Point& x0, const Vec& u, double a, double b, double s,
                      double density_tol = 1e-8);

}  // namespace hilbert
