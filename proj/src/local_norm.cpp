#include "hilbert/local_norm.hpp"

#include "hilbert/sampling.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hilbert {

namespace {

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

// Rotate a convex CCW polygon so it starts at its lowest (then leftmost) vertex.
void start_at_bottom(std::vector<Vec>& poly) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < poly.size(); ++i)
    if (poly[i](1) < poly[k](1) || (poly[i](1) == poly[k](1) && poly[i](0) < poly[k](0))) k = i;
  std::rotate(poly.begin(), poly.begin() + k, poly.end());
}

std::vector<Vec> minkowski_sum(std::vector<Vec> p, std::vector<Vec> q) {
  start_at_bottom(p);
  start_at_bottom(q);
  const std::size_t n = p.size(), m = q.size();
  p.push_back(p[0]);
  p.push_back(p[1]);
  q.push_back(q[0]);
  q.push_back(q[1]);
  std::vector<Vec> out;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    out.push_back(p[i] + q[j]);
    const double c = cross2(p[i + 1] - p[i], q[j + 1] - q[j]);
    if (c >= 0.0 && i < n) ++i;
    if (c <= 0.0 && j < m) ++j;
  }
  return out;
}

double inv_norm(const ConvexBody& body, const Point& p, const Vec& u) {
  const ChordParams c = body.chord_params(p, u);
  return 1.0 / (0.5 * (-1.0 / c.t_minus + 1.0 / c.t_plus));
}

}  // namespace

double PolygonNorm::norm(const Vec& v) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& zi : z) best = std::max(best, zi.dot(v));
  return best;
}

double PolygonNorm::dual_norm(const Vec& w) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& zi : z_polar) best = std::max(best, zi.dot(w));
  return best;
}

double PolygonNorm::unit_ball_area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < z_polar.size(); ++i) a += cross2(z_polar[i], z_polar[(i + 1) % z_polar.size()]);
  return 0.5 * a;
}

PolygonNorm polygon_norm(const ConvexBody& body, const Point& p) {
  require(body.kind() == BodyKind::polytope && body.dim() == 2, "polygon_norm: needs a polygon");
  const auto& normals = body.facet_normals();
  const auto& offsets = body.facet_offsets();
  std::vector<double> slacks(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) slacks[i] = offsets[i] - normals[i].dot(p);
  return polygon_norm_from_slacks(body, slacks);
}

PolygonNorm polygon_norm_from_slacks(const ConvexBody& body, const std::vector<double>& slacks) {
  require(body.kind() == BodyKind::polytope && body.dim() == 2, "polygon_norm: needs a polygon");
  const auto& normals = body.facet_normals();
  std::vector<Vec> polar, neg;
  polar.reserve(normals.size());
  neg.reserve(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (!(slacks[i] > 0.0)) throw ValidationError("polygon_norm: point is not interior");
    polar.push_back(normals[i] / slacks[i]);
    neg.push_back(-polar.back());
  }
  PolygonNorm out;
  out.z = minkowski_sum(polar, neg);
  for (auto& v : out.z) v *= 0.5;
  const std::size_t k = out.z.size();
  out.z_polar.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vec& a = out.z[i];
    const Vec& b = out.z[(i + 1) % k];
    // Vertex of Z° dual to the edge [a, b]: a.v = b.v = 1.
    const double det = cross2(a, b);
    out.z_polar.push_back(make_vec({(b(1) - a(1)) / det, (a(0) - b(0)) / det}));
  }
  return out;
}

Mat ellipsoid_norm_matrix(const ConvexBody& body, const Point& p) {
  require(body.kind() == BodyKind::ellipsoid, "ellipsoid_norm_matrix: needs an ellipsoid");
  const Mat& a = body.shape_inverse();
  const Vec d = p - body.center();
  const Vec ad = a * d;
  const double gamma = d.dot(ad) - 1.0;
  if (!(gamma < 0.0)) throw ValidationError("ellipsoid_norm_matrix: point is not interior");
  return (ad * ad.transpose() - gamma * a) / (gamma * gamma);
}

Mat unit_ball_frame(const ConvexBody& body, const Point& p) {
  require(body.dim() == 2, "unit_ball_frame: 2D only");
  require(body.contains(p), "unit_ball_frame: point is not interior");
  if (body.kind() == BodyKind::ellipsoid) {
    // Q = L L^T, so {v^T Q v < 1} is the image of the disk under L^{-T}.
    const Eigen::LLT<Mat> llt(ellipsoid_norm_matrix(body, p));
    return llt.matrixU().solve(Mat(Mat::Identity(2, 2)));
  }
  if (body.kind() == BodyKind::polytope) {
    // Square root of the normalized second moment of the polygon Z°.
    const auto zp = polygon_norm(body, p).z_polar;
    Mat m = Mat::Zero(2, 2);
    double area = 0.0;
    for (std::size_t i = 0; i < zp.size(); ++i) {
      const Vec& a = zp[i];
      const Vec& b = zp[(i + 1) % zp.size()];
      const double t = 0.5 * cross2(a, b);
      area += t;
      m += t / 6.0 * (a * a.transpose() + b * b.transpose() + 0.5 * (a * b.transpose() + b * a.transpose()));
    }
    const Eigen::LLT<Mat> llt(4.0 * m / area);
    return llt.matrixL();
  }
  // Longest radius direction and its perpendicular, twice.
  Mat frame = Mat::Identity(2, 2);
  for (int pass = 0; pass < 2; ++pass) {
    auto radius = [&](double th) {
      const Vec w = frame * make_vec({std::cos(th), std::sin(th)});
      return inv_norm(body, p, w);
    };
    const int coarse = 32;
    int best = 0;
    double best_r = -1.0;
    for (int i = 0; i < coarse; ++i) {
      const double r = radius(std::numbers::pi * i / coarse);
      if (r > best_r) {
        best_r = r;
        best = i;
      }
    }
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::numbers::pi * (best - 1) / coarse, hi = std::numbers::pi * (best + 1) / coarse;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = radius(x1), f2 = radius(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = radius(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = radius(x1);
      }
    }
    const double th = 0.5 * (lo + hi);
    Vec e1 = frame * make_vec({std::cos(th), std::sin(th)});
    Vec e2 = frame * make_vec({-std::sin(th), std::cos(th)});
    const double r1 = inv_norm(body, p, e1);
    const double r2 = inv_norm(body, p, e2);
    Mat next(2, 2);
    next.col(0) = r1 * e1;
    next.col(1) = r2 * e2;
    frame = next;
  }
  return frame;
}

VolumeEstimate unit_ball_volume_polar(const ConvexBody& body, const Point& p, double rel_tol,
                                      int max_directions) {
  require(body.contains(p), "unit_ball_volume: point is not interior");
  const int n = body.dim();
  if (n == 2) {
    const Mat frame = unit_ball_frame(body, p);
    const double det = std::abs(frame.determinant());
    auto integrand = [&](double th) {
      const Vec w = frame * make_vec({std::cos(th), std::sin(th)});
      const double r = inv_norm(body, p, w);
      return r * r;
    };
    // Periodic trapezoid over [0, pi): the integrand is even under v -> -v.
    int m = 32;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += integrand(std::numbers::pi * i / m);
    double value = det * sum * std::numbers::pi / m;
    double change = std::numeric_limits<double>::infinity();
    while (m < max_directions / 2 && !(change <= rel_tol * value)) {
      for (int i = 0; i < m; ++i) sum += integrand(std::numbers::pi * (i + 0.5) / m);
      m *= 2;
      const double next = det * sum * std::numbers::pi / m;
      change = std::abs(next - value);
      value = next;
    }
    return {value, change, 2 * m};
  }
  const int count = 20000;
  auto estimate = [&](int cnt) {
    const auto dirs = sphere_directions(n, cnt);
    double sum = 0.0;
    for (const auto& u : dirs) sum += std::pow(inv_norm(body, p, u), n);
    return unit_sphere_area_euclidean(n) / n * sum / cnt;
  };
  const double value = estimate(count);
  const double half = estimate(count / 2);
  return {value, std::abs(value - half), count};
}

VolumeEstimate unit_ball_volume(const ConvexBody& body, const Point& p, double rel_tol) {
  require(static_cast<int>(p.size()) == body.dim(), "unit_ball_volume: dimension mismatch");
  if (body.kind() == BodyKind::polytope && body.dim() == 2) {
    const double a = polygon_norm(body, p).unit_ball_area();
    return {a, 8.0 * std::numeric_limits<double>::epsilon() * a, 0};
  }
  if (body.kind() == BodyKind::ellipsoid) {
    const Mat q = ellipsoid_norm_matrix(body, p);
    const double v = unit_ball_volume_euclidean(body.dim()) / std::sqrt(q.determinant());
    return {v, 16.0 * std::numeric_limits<double>::epsilon() * v, 0};
  }
  return unit_ball_volume_polar(body, p, rel_tol);
}

double density(const ConvexBody& body, const Point& p, double rel_tol) {
  if (body.kind() == BodyKind::ellipsoid) {
    require(static_cast<int>(p.size()) == body.dim(), "density: dimension mismatch");
    return std::sqrt(ellipsoid_norm_matrix(body, p).determinant());
  }
  return unit_ball_volume_euclidean(body.dim()) / unit_ball_volume(body, p, rel_tol).value;
}

}  // namespace hilbert
