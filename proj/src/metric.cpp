#include "hilbert/metric.hpp"

#include "hilbert/local_norm.hpp"
#include "hilbert/sampling.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hilbert {

namespace {

bool lex_less(const Point& a, const Point& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

void require_interior(const ConvexBody& body, const Point& p, const char* what) {
  if (static_cast<int>(p.size()) != body.dim())
    throw ValidationError(std::string(what) + ": dimension mismatch");
  if (!body.contains(p)) throw ValidationError(std::string(what) + ": point is not interior");
}

}  // namespace

double cross_ratio(const Point& a, const Point& p, const Point& q, const Point& b) {
  require(a.size() == p.size() && p.size() == q.size() && q.size() == b.size(),
          "cross_ratio: dimension mismatch");
  const Vec dir = b - a;
  const double len = dir.norm();
  require(len > 0.0, "cross_ratio: a = b");
  const Vec u = dir / len;
  // Collinearity: residual of p and q against the line through a and b.
  for (const Point* x : {&p, &q}) {
    const Vec r = (*x - a) - u.dot(*x - a) * u;
    require(r.norm() <= 1e-9 * std::max(1.0, len), "cross_ratio: points are not collinear");
  }
  const double tp = u.dot(p - a), tq = u.dot(q - a);
  require(tp > 0.0, "cross_ratio: a and p coincide or are out of order");
  require(tq > tp, "cross_ratio: p and q coincide or are out of order");
  require(len > tq, "cross_ratio: q and b coincide or are out of order");
  return (tq / tp) * ((len - tp) / (len - tq));
}

double distance_along_chord(double a, double b, double t) {
  // 0.5 log([a, p, q, b]) with the chord scaled so that q sits at parameter t.
  return 0.5 * (std::log1p(t / a) + std::log1p(t / (b - t)));
}

double distance_unchecked(const ConvexBody& body, const Point& p0, const Point& q0) {
  const bool swap = lex_less(q0, p0);
  const Point& p = swap ? q0 : p0;
  const Point& q = swap ? p0 : q0;
  const Vec v = q - p;
  if (v.isZero(0.0)) return 0.0;
  const ChordParams c = body.chord_params(p, v);
  return 0.5 * (std::log1p(-1.0 / c.t_minus) + std::log1p(1.0 / (c.t_plus - 1.0)));
}

DistanceResult distance_with_error(const ConvexBody& body, const Point& p0, const Point& q0) {
  require_interior(body, p0, "distance");
  require_interior(body, q0, "distance");
  const bool swap = lex_less(q0, p0);
  const Point& p = swap ? q0 : p0;
  const Point& q = swap ? p0 : q0;
  const Vec v = q - p;
  if (v.isZero(0.0)) return {0.0, 0.0};
  const ChordParams c = body.chord_params(p, v);
  const double a = -c.t_minus, b = c.t_plus;
  if (!(b > 1.0)) throw ValidationError("distance: point too close to the boundary to resolve");
  const double d = 0.5 * (std::log1p(1.0 / a) + std::log1p(1.0 / (b - 1.0)));
  const double da = 0.5 / (a * (a + 1.0));
  const double db = 0.5 / (b * (b - 1.0));
  const double err = c.tol * (da + db) + 4.0 * std::numeric_limits<double>::epsilon() * (d + 1.0);
  return {d, err};
}

double distance(const ConvexBody& body, const Point& p, const Point& q) {
  return distance_with_error(body, p, q).value;
}

double finsler_norm(const ConvexBody& body, const Point& p, const Vec& v) {
  require_interior(body, p, "finsler_norm");
  require(static_cast<int>(v.size()) == body.dim() && v.allFinite(), "finsler_norm: bad vector");
  if (v.isZero(0.0)) return 0.0;
  const ChordParams c = body.chord_params(p, v);
  return 0.5 * (-1.0 / c.t_minus + 1.0 / c.t_plus);
}

Covector finsler_norm_gradient(const ConvexBody& body, const Point& p, const Vec& v) {
  require(!v.isZero(0.0), "finsler_norm_gradient: zero vector");
  const ChordParams c = body.chord_params(p, v);
  const Point a = p + c.t_minus * v;
  const Point b = p + c.t_plus * v;
  const Vec na = body.outward_normal(a);
  const Vec nb = body.outward_normal(b);
  return 0.5 * (nb / nb.dot(b - p) - na / na.dot(a - p));
}

DualNormResult finsler_dual_norm_sampled(const ConvexBody& body, const Point& p, const Covector& w,
                                         int directions) {
  const int n = body.dim();
  auto ratio = [&](const Vec& u) {
    const ChordParams c = body.chord_params(p, u);
    return w.dot(u) / (0.5 * (-1.0 / c.t_minus + 1.0 / c.t_plus));
  };
  if (n == 2) {
    auto at = [&](double th) { return ratio(make_vec({std::cos(th), std::sin(th)})); };
    const double step = 2.0 * std::numbers::pi / directions;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < directions; ++i) {
      const double val = at(step * i);
      if (val > best_val) {
        best_val = val;
        best = i;
      }
    }
    // Golden-section refinement on the bracketing cell pair.
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = step * (best - 1), hi = step * (best + 1);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = at(x1), f2 = at(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = at(x1);
      }
    }
    const double th = 0.5 * (lo + hi);
    const double refined = std::max(best_val, at(th));
    Vec u = make_vec({std::cos(th), std::sin(th)});
    u /= finsler_norm(body, p, u);
    // The maximum is locally quadratic, so the grid value already sits within
    // (refined - grid); the refined value is accurate to far better than that.
    return {refined, 1e-9 * std::abs(refined) + 1e-14, u};
  }
  const auto dirs = sphere_directions(n, std::max(directions, 2000));
  Vec best_u = dirs.front();
  double best_val = -std::numeric_limits<double>::infinity();
  for (const auto& u : dirs) {
    const double val = ratio(u);
    if (val > best_val) {
      best_val = val;
      best_u = u;
    }
  }
  const double coarse = best_val;
  // Coordinate-wise pattern search on the sphere around the best sample.
  double step = 0.1;
  while (step > 1e-9) {
    bool improved = false;
    for (int i = 0; i < n && !improved; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vec u = best_u;
        u(i) += sgn * step;
        u /= u.norm();
        const double val = ratio(u);
        if (val > best_val) {
          best_val = val;
          best_u = u;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  Vec u = best_u / finsler_norm(body, p, best_u);
  return {best_val, std::max(1e-9 * std::abs(best_val), 1e-3 * (best_val - coarse)), u};
}

DualNormResult finsler_dual_norm(const ConvexBody& body, const Point& p, const Covector& w) {
  require_interior(body, p, "finsler_dual_norm");
  require(static_cast<int>(w.size()) == body.dim() && w.allFinite(), "finsler_dual_norm: bad covector");
  if (w.isZero(0.0)) return {0.0, 0.0, Vec::Zero(body.dim())};
  if (body.kind() == BodyKind::polytope && body.dim() == 2) {
    const PolygonNorm pn = polygon_norm(body, p);
    double best = -std::numeric_limits<double>::infinity();
    Vec arg;
    for (const auto& v : pn.z_polar) {
      if (w.dot(v) > best) {
        best = w.dot(v);
        arg = v;
      }
    }
    return {best, 4.0 * std::numeric_limits<double>::epsilon() * best, arg};
  }
  if (body.kind() == BodyKind::ellipsoid) {
    const Mat q = ellipsoid_norm_matrix(body, p);
    const Eigen::LLT<Mat> llt(q);
    const Vec qw = llt.solve(w);
    const double val = std::sqrt(w.dot(qw));
    return {val, 8.0 * std::numeric_limits<double>::epsilon() * val, qw / val};
  }
  return finsler_dual_norm_sampled(body, p, w);
}

Covector distance_gradient(const ConvexBody& body, const Point& x0, const Point& x) {
  require_interior(body, x, "distance_gradient");
  const Vec v = x - x0;
  require(!v.isZero(0.0), "distance_gradient: undefined at the base point");
  return finsler_norm_gradient(body, x, v);
}

double ray_param_at_distance(double a, double b, double s) {
  const double e = std::exp(2.0 * s);
  return a * b * std::expm1(2.0 * s) / (b + e * a);
}

double ray_param_derivative(double a, double b, double s) {
  const double e = std::exp(2.0 * s);
  const double den = b + e * a;
  return 2.0 * e * a * b * (a + b) / (den * den);
}

Point point_at_distance(const ConvexBody& body, const Point& x0, const Vec& u, double s) {
  require(s >= 0.0 && std::isfinite(s), "point_at_distance: bad distance");
  if (s == 0.0) return x0;
  const ChordParams c = body.chord_params(x0, u);
  return x0 + ray_param_at_distance(-c.t_minus, c.t_plus, s) * u;
}

bool ball_contains(const ConvexBody& body, const Ball& ball, const Point& x) {
  require_interior(body, ball.center, "ball_contains");
  require(ball.radius >= 0.0 && std::isfinite(ball.radius), "ball_contains: bad radius");
  if (static_cast<int>(x.size()) != body.dim()) throw ValidationError("ball_contains: dimension mismatch");
  if (!body.contains(x)) return false;
  return distance_unchecked(body, ball.center, x) <= ball.radius;
}

std::vector<Point> ball_boundary_polyline(const ConvexBody& body, const Ball& ball, int m) {
  require(body.dim() == 2, "ball_boundary_polyline: 2D only");
  require(m >= 8, "ball_boundary_polyline: need m >= 8");
  require_interior(body, ball.center, "ball_boundary_polyline");
  require(ball.radius >= 0.0 && std::isfinite(ball.radius), "ball_boundary_polyline: bad radius");
  if (ball.radius == 0.0) return {ball.center};
  std::vector<Point> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double th = 2.0 * std::numbers::pi * i / m;
    out.push_back(point_at_distance(body, ball.center, make_vec({std::cos(th), std::sin(th)}), ball.radius));
  }
  return out;
}

}  // namespace hilbert
