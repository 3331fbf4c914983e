#pragma once

#include "hilbert/convex_body.hpp"

#include <vector>

namespace hilbert {

/// Horoball based at a boundary point, passing through the anchor.
struct HoroballSpec {
  Point base;    // on the boundary
  Point anchor;  // interior
};

struct BusemannResult {
  double value;
  int depth;        // approach index k at which the sequence settled
  double last_step; // |b_k - b_{k-1}|
};

inline constexpr double kBusemannTol = 1e-6;

/// lim d(x, z) - d(anchor, z) as z -> base along [anchor, base), evaluated at
/// z_k = anchor + (1 - 2^-k)(base - anchor). Throws ConvergenceError if the
/// sequence does not settle by k = 40 or is visibly non-monotone.
BusemannResult busemann_eval(const ConvexBody& body, const Point& base, const Point& anchor, const Point& x);
double busemann(const ConvexBody& body, const Point& base, const Point& anchor, const Point& x);

/// Closure convention: the anchor itself is a member.
bool horoball_contains(const ConvexBody& body, const HoroballSpec& spec, const Point& x);
/// Zero level set of the Busemann function traced from the midpoint of
/// [anchor, base] along m equispaced directions (2D).
std::vector<Point> horosphere_polyline(const ConvexBody& body, const HoroballSpec& spec, int m);

}  // namespace hilbert
