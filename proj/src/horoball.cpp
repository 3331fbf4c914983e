#include "hilbert/horoball.hpp"

#include "hilbert/metric.hpp"

#include <cmath>
#include <numbers>

namespace hilbert {

BusemannResult busemann_eval(const ConvexBody& body, const Point& base, const Point& anchor, const Point& x) {
  require(body.contains(anchor), "busemann: anchor is not interior");
  require(body.contains(x), "busemann: point is not interior");
  require(static_cast<int>(base.size()) == body.dim() && base.allFinite(), "busemann: bad base point");
  const Vec v = base - anchor;
  require(!v.isZero(0.0), "busemann: base equals anchor");
  const ChordParams c = body.chord_params(anchor, v);
  // base must be where the ray from the anchor leaves the body.
  if (std::abs(c.t_plus - 1.0) > 1e-9 + c.tol)
    throw ValidationError("busemann: base point is not on the boundary");
  if (x == anchor) return {0.0, 0, 0.0};

  const double a = -c.t_minus, tb = c.t_plus;
  double prev = 0.0;
  for (int k = 1; k <= 40; ++k) {
    const double gap = std::ldexp(1.0, -k);
    const double t = 1.0 - gap;
    const Point z = anchor + t * v;
    // d(anchor, z) in closed form from the chord, with the gap kept exact.
    const double d_anchor = 0.5 * (std::log1p(t / a) + std::log1p(t / ((tb - 1.0) + gap)));
    const double val = distance_unchecked(body, x, z) - d_anchor;
    if (k > 1) {
      const double step = prev - val;
      if (step < -1e-7 * (1.0 + std::abs(val)))
        throw ConvergenceError("busemann: approach sequence is not monotone (boundary degeneracy)");
      if (k >= 4 && std::abs(step) < kBusemannTol) return {val, k, std::abs(step)};
    }
    prev = val;
  }
  throw ConvergenceError("busemann: no convergence within 40 refinements");
}

double busemann(const ConvexBody& body, const Point& base, const Point& anchor, const Point& x) {
  return busemann_eval(body, base, anchor, x).value;
}

bool horoball_contains(const ConvexBody& body, const HoroballSpec& spec, const Point& x) {
  return busemann(body, spec.base, spec.anchor, x) <= 0.0;
}

std::vector<Point> horosphere_polyline(const ConvexBody& body, const HoroballSpec& spec, int m) {
  require(body.dim() == 2, "horosphere_polyline: 2D only");
  require(m >= 8, "horosphere_polyline: need m >= 8");
  const Point seed = 0.5 * (spec.anchor + spec.base);
  auto f = [&](const Point& y) { return busemann(body, spec.base, spec.anchor, y); };
  require(f(seed) < 0.0, "horosphere_polyline: seed is not inside the horoball");
  std::vector<Point> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double th = 2.0 * std::numbers::pi * i / m;
    const Vec u = make_vec({std::cos(th), std::sin(th)});
    const double exit = body.exit_param(seed, u);
    double lo = 0.0, hi = exit * (1.0 - 1e-6);
    if (f(seed + hi * u) <= 0.0) {
      // Only the ray into the base stays inside up to the boundary.
      out.push_back(seed + hi * u);
      continue;
    }
    for (int it = 0; it < 45; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(seed + mid * u) <= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back(seed + 0.5 * (lo + hi) * u);
  }
  return out;
}

}  // namespace hilbert
