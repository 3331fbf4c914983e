#include "hilbert/convex_body.hpp"

#include "hilbert/sampling.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hilbert {

namespace {

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

// Andrew's monotone chain; returns the strict hull counter-clockwise.
std::vector<Point> convex_hull_2d(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) { return a == b; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Point& o, const Point& a, const Point& b) {
    return cross2(a - o, b - o);
  };
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

HomVec homogenize(const Point& x) {
  HomVec h(x.size() + 1);
  h.head(x.size()) = x;
  h(x.size()) = 1.0;
  return h;
}

}  // namespace

Point apply_projective(const ProjMatrix& m, const Point& x) {
  const int n = static_cast<int>(x.size());
  require(m.rows() == n + 1 && m.cols() == n + 1, "projective map: size mismatch");
  const HomVec y = m * homogenize(x);
  const double w = y(n);
  if (!(std::abs(w) > 1e-300)) throw ValidationError("projective map sends point to infinity");
  return y.head(n) / w;
}

ConvexBody ConvexBody::polygon(const std::vector<Point>& vertices, std::string name) {
  for (const auto& v : vertices) {
    require(v.size() == 2, "polygon: vertices must be planar");
    require(v.allFinite(), "polygon: non-finite vertex");
  }
  auto hull = convex_hull_2d(vertices);
  require(hull.size() >= 3, "polygon: fewer than three hull vertices");
  // Keep the caller's first vertex first when it is a hull vertex.
  const auto first = std::find(hull.begin(), hull.end(), vertices.front());
  if (first != hull.end()) std::rotate(hull.begin(), first, hull.end());
  double area2 = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    area2 += cross2(hull[i], hull[(i + 1) % hull.size()]);
    scale = std::max(scale, hull[i].norm());
  }
  require(area2 > 1e-12 * scale * scale, "polygon: degenerate (zero area)");

  ConvexBody body;
  body.dim_ = 2;
  body.kind_ = BodyKind::polytope;
  body.name_ = std::move(name);
  body.vertices_ = hull;
  Point centroid = Point::Zero(2);
  for (const auto& v : hull) centroid += v;
  centroid /= static_cast<double>(hull.size());
  body.interior_ = centroid;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % hull.size()];
    Vec n = make_vec({b(1) - a(1), a(0) - b(0)});  // outward for CCW order
    n /= n.norm();
    body.normals_.push_back(n);
    body.offsets_.push_back(n.dot(a));
  }
  body.bounding_radius_ = scale;
  return body;
}

ConvexBody ConvexBody::simplex(const std::vector<Point>& vertices, std::string name) {
  require(!vertices.empty(), "simplex: no vertices");
  const int n = static_cast<int>(vertices.front().size());
  require(n >= 2 && n <= kMaxDim, "simplex: unsupported dimension");
  require(static_cast<int>(vertices.size()) == n + 1, "simplex: need n+1 vertices");
  if (n == 2) return polygon(vertices, std::move(name));

  Mat edges(n, n);
  for (int i = 0; i < n; ++i) edges.col(i) = vertices[i + 1] - vertices[0];
  double scale = 0.0;
  for (const auto& v : vertices) scale = std::max(scale, v.norm());
  require(std::abs(edges.determinant()) > 1e-12 * std::pow(scale, n), "simplex: degenerate");

  ConvexBody body;
  body.dim_ = n;
  body.kind_ = BodyKind::polytope;
  body.name_ = std::move(name);
  body.vertices_ = vertices;
  Point centroid = Point::Zero(n);
  for (const auto& v : vertices) centroid += v;
  centroid /= static_cast<double>(n + 1);
  body.interior_ = centroid;
  // Facet i omits vertex i; its normal solves M^T normal = 0 on the facet edges.
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<Point> facet;
    for (int j = 0; j <= n; ++j)
      if (j != skip) facet.push_back(vertices[j]);
    Mat m(n - 1, n);
    for (int j = 1; j < n; ++j) m.row(j - 1) = (facet[j] - facet[0]).transpose();
    const Eigen::MatrixXd md = m;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(md);
    Eigen::VectorXd kernel = lu.kernel().col(0);
    Vec normal = kernel;
    normal /= normal.norm();
    double offset = normal.dot(facet[0]);
    if (normal.dot(centroid) > offset) {
      normal = -normal;
      offset = -offset;
    }
    body.normals_.push_back(normal);
    body.offsets_.push_back(offset);
  }
  body.bounding_radius_ = scale;
  return body;
}

ConvexBody ConvexBody::ellipsoid(const Point& center, const Mat& shape, std::string name) {
  const int n = static_cast<int>(center.size());
  require(n >= 2 && n <= kMaxDim, "ellipsoid: unsupported dimension");
  require(shape.rows() == n && shape.cols() == n, "ellipsoid: shape size mismatch");
  require(center.allFinite() && shape.allFinite(), "ellipsoid: non-finite data");
  require((shape - shape.transpose()).norm() <= 1e-12 * shape.norm(), "ellipsoid: shape not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> eig(shape);
  require(eig.eigenvalues().minCoeff() > 0.0, "ellipsoid: shape not positive definite");

  ConvexBody body;
  body.dim_ = n;
  body.kind_ = BodyKind::ellipsoid;
  body.name_ = std::move(name);
  body.center_ = center;
  body.shape_inv_ = shape.inverse();
  body.shape_inv_ = 0.5 * (body.shape_inv_ + body.shape_inv_.transpose()).eval();
  body.interior_ = center;
  body.bounding_radius_ = center.norm() + std::sqrt(eig.eigenvalues().maxCoeff());
  return body;
}

ConvexBody ConvexBody::sublevel(int dim, Function g, const Point& interior, double bounding_radius,
                                std::string name) {
  require(dim >= 2 && dim <= kMaxDim, "sublevel: unsupported dimension");
  require(static_cast<int>(interior.size()) == dim, "sublevel: interior point dimension");
  require(bounding_radius > 0.0 && std::isfinite(bounding_radius), "sublevel: bad bounding radius");
  require(static_cast<bool>(g), "sublevel: empty function");
  ConvexBody body;
  body.dim_ = dim;
  body.kind_ = BodyKind::sublevel;
  body.name_ = std::move(name);
  body.g_ = std::move(g);
  body.interior_ = interior;
  body.bounding_radius_ = bounding_radius;
  require(body.contains(interior), "sublevel: interior point is not inside the body");
  return body;
}

void ConvexBody::check_point(const Point& x, const char* what) const {
  if (static_cast<int>(x.size()) != dim_)
    throw ValidationError(std::string(what) + ": dimension mismatch");
  if (!x.allFinite()) throw ValidationError(std::string(what) + ": non-finite coordinates");
}

double ConvexBody::sublevel_value(const Point& x) const {
  if (!chart_) return g_(x);
  const HomVec y = (*chart_) * homogenize(x);
  const double w = y(dim_);
  if (!(std::abs(w) > 1e-300)) return std::numeric_limits<double>::infinity();
  return g_(Point(y.head(dim_) / w));
}

bool ConvexBody::contains(const Point& x) const {
  check_point(x, "contains");
  switch (kind_) {
    case BodyKind::polytope:
      for (std::size_t i = 0; i < normals_.size(); ++i)
        if (!(normals_[i].dot(x) < offsets_[i])) return false;
      return true;
    case BodyKind::ellipsoid: {
      const Vec d = x - center_;
      return d.dot(shape_inv_ * d) < 1.0;
    }
    case BodyKind::sublevel: {
      const double v = sublevel_value(x);
      return std::isfinite(v) && v < 1.0;
    }
  }
  return false;
}

// Distance along a unit direction to the boundary of a sublevel body, by
// exponential bracketing followed by Illinois steps safeguarded with bisection.
double ConvexBody::sublevel_exit(const Point& p, const Vec& dir) const {
  auto f = [&](double s) { return sublevel_value(p + s * dir) - 1.0; };
  auto inside = [](double v) { return std::isfinite(v) && v < 0.0; };
  const double tol = boundary_tolerance();

  double lo = 0.0;
  double flo = f(0.0);
  double step = 1e-3 * bounding_radius_;
  double hi = step;
  double fhi = f(hi);
  while (inside(fhi)) {
    lo = hi;
    flo = fhi;
    step *= 2.0;
    hi = lo + step;
    if (hi > 64.0 * bounding_radius_) throw ValidationError("sublevel body appears unbounded along a ray");
    fhi = f(hi);
  }

  int side = 0;
  double last_width = hi - lo;
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double width = hi - lo;
    double s;
    const bool use_secant = std::isfinite(fhi) && fhi > flo && (iter % 4 != 3 || width < 0.5 * last_width);
    if (iter % 4 == 3) last_width = width;
    if (use_secant) {
      s = lo + (hi - lo) * (-flo) / (fhi - flo);
      const double guard = std::max(0.25 * tol, 1e-3 * width);
      s = std::clamp(s, lo + guard, hi - guard);
    } else {
      s = 0.5 * (lo + hi);
    }
    const double fs = f(s);
    if (inside(fs)) {
      lo = s;
      flo = fs;
      if (side == -1 && std::isfinite(fhi)) fhi *= 0.5;
      side = -1;
    } else {
      hi = s;
      fhi = fs;
      if (side == +1) flo *= 0.5;
      side = +1;
    }
    // Probe just past the current estimate to close the bracket from the other side.
    if (hi - lo > tol) {
      const double probe = side == -1 ? std::min(lo + 0.5 * tol, 0.5 * (lo + hi))
                                      : std::max(hi - 0.5 * tol, 0.5 * (lo + hi));
      const double fp = f(probe);
      if (inside(fp)) {
        lo = probe;
        flo = fp;
      } else {
        hi = probe;
        fhi = fp;
      }
    }
  }
  if (hi - lo > tol) throw ConvergenceError("sublevel boundary search did not converge");
  return 0.5 * (lo + hi);
}

ChordParams ConvexBody::chord_params(const Point& p, const Vec& v) const {
  switch (kind_) {
    case BodyKind::polytope: {
      double tp = std::numeric_limits<double>::infinity();
      double tm = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < normals_.size(); ++i) {
        const double nv = normals_[i].dot(v);
        const double slack = offsets_[i] - normals_[i].dot(p);
        if (nv > 0.0) {
          tp = std::min(tp, slack / nv);
        } else if (nv < 0.0) {
          tm = std::max(tm, slack / nv);
        }
      }
      return {tm, tp, 0.0};
    }
    case BodyKind::ellipsoid: {
      const Vec d = p - center_;
      const Vec av = shape_inv_ * v;
      const double a = v.dot(av);
      const double beta = d.dot(av);
      const double gamma = d.dot(shape_inv_ * d) - 1.0;
      const double disc = std::sqrt(std::max(0.0, beta * beta - a * gamma));
      // Roots of a t^2 + 2 beta t + gamma; written in |beta| so that negating v
      // negates and swaps the roots exactly.
      const double big = (std::abs(beta) + disc) / a;
      const double small = -gamma / (std::abs(beta) + disc);
      if (beta > 0.0) return {-big, small, 0.0};
      if (beta < 0.0) return {-small, big, 0.0};
      const double r = disc / a;
      return {-r, r, 0.0};
    }
    case BodyKind::sublevel: {
      const double vn = v.norm();
      const Vec dir = v / vn;
      const double sp = sublevel_exit(p, dir);
      const double sm = sublevel_exit(p, Vec(-dir));
      return {-sm / vn, sp / vn, boundary_tolerance() / vn};
    }
  }
  return {0.0, 0.0, 0.0};
}

double ConvexBody::exit_param(const Point& p, const Vec& v) const {
  switch (kind_) {
    case BodyKind::polytope: {
      double tp = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < normals_.size(); ++i) {
        const double nv = normals_[i].dot(v);
        if (nv > 0.0) tp = std::min(tp, (offsets_[i] - normals_[i].dot(p)) / nv);
      }
      return tp;
    }
    case BodyKind::ellipsoid:
      return chord_params(p, v).t_plus;
    case BodyKind::sublevel: {
      const double vn = v.norm();
      return sublevel_exit(p, Vec(v / vn)) / vn;
    }
  }
  return 0.0;
}

Chord ConvexBody::chord(const Point& p, const Vec& v) const {
  check_point(p, "chord");
  check_point(v, "chord direction");
  if (!(v.norm() > 0.0)) throw ValidationError("chord: zero direction");
  if (!contains(p)) throw ValidationError("chord: point is not interior");
  const ChordParams c = chord_params(p, v);
  return {p + c.t_minus * v, p + c.t_plus * v, c.tol * v.norm()};
}

Vec ConvexBody::outward_normal(const Point& b) const {
  check_point(b, "outward_normal");
  switch (kind_) {
    case BodyKind::polytope: {
      std::size_t best = 0;
      double best_slack = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < normals_.size(); ++i) {
        const double slack = std::abs(offsets_[i] - normals_[i].dot(b));
        if (slack < best_slack) {
          best_slack = slack;
          best = i;
        }
      }
      return normals_[best];
    }
    case BodyKind::ellipsoid: {
      Vec n = shape_inv_ * (b - center_);
      return n / n.norm();
    }
    case BodyKind::sublevel: {
      const double h = 1e-7 * bounding_radius_;
      Vec grad(dim_);
      for (int i = 0; i < dim_; ++i) {
        Point xp = b, xm = b;
        xp(i) += h;
        xm(i) -= h;
        grad(i) = (sublevel_value(xp) - sublevel_value(xm)) / (2.0 * h);
      }
      if (!grad.allFinite() || !(grad.norm() > 0.0))
        throw ConvergenceError("outward_normal: gradient unavailable at boundary point");
      return grad / grad.norm();
    }
  }
  return Vec();
}

ConvexBody ConvexBody::projective_transform(const ProjMatrix& m) const {
  const int n = dim_;
  require(m.rows() == n + 1 && m.cols() == n + 1, "projective_transform: matrix size mismatch");
  require(m.allFinite(), "projective_transform: non-finite matrix");
  Eigen::FullPivLU<ProjMatrix> lu(m);
  require(lu.isInvertible(), "projective_transform: matrix not invertible");
  const ProjMatrix minv = lu.inverse();

  auto last_coord = [&](const Point& x) { return m.row(n).head(n).dot(x) + m(n, n); };

  switch (kind_) {
    case BodyKind::polytope: {
      double wmin = std::numeric_limits<double>::infinity();
      double wmax = -std::numeric_limits<double>::infinity();
      for (const auto& v : vertices_) {
        const double w = last_coord(v);
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
      }
      const double wscale = std::max(std::abs(wmin), std::abs(wmax));
      if (!(wmin > 1e-9 * wscale || wmax < -1e-9 * wscale))
        throw ValidationError("projective_transform: image is unbounded (hyperplane crossing)");
      std::vector<Point> mapped;
      for (const auto& v : vertices_) mapped.push_back(apply_projective(m, v));
      if (n == 2) return polygon(mapped, name_);
      if (static_cast<int>(vertices_.size()) == n + 1) return simplex(mapped, name_);
      // General polytope: transform the facet covectors (n_i, -b_i) by M^{-1}.
      ConvexBody body = *this;
      body.vertices_ = mapped;
      const double sign = wmin > 0 ? 1.0 : -1.0;
      for (std::size_t i = 0; i < normals_.size(); ++i) {
        HomVec c(n + 1);
        c.head(n) = normals_[i];
        c(n) = -offsets_[i];
        HomVec cp = (c.transpose() * minv).transpose() * sign;
        const double nn = cp.head(n).norm();
        body.normals_[i] = cp.head(n) / nn;
        body.offsets_[i] = -cp(n) / nn;
      }
      Point centroid = Point::Zero(n);
      double radius = 0.0;
      for (const auto& v : mapped) {
        centroid += v;
        radius = std::max(radius, v.norm());
      }
      body.interior_ = centroid / static_cast<double>(mapped.size());
      body.bounding_radius_ = radius;
      return body;
    }
    case BodyKind::ellipsoid: {
      // Quadric form K with interior {X^T K X < 0}; K' = M^{-T} K M^{-1}.
      ProjMatrix k(n + 1, n + 1);
      const Vec ac = shape_inv_ * center_;
      k.topLeftCorner(n, n) = shape_inv_;
      k.topRightCorner(n, 1) = -ac;
      k.bottomLeftCorner(1, n) = -ac.transpose();
      k(n, n) = center_.dot(ac) - 1.0;
      const ProjMatrix kp = minv.transpose() * k * minv;
      Mat a = kp.topLeftCorner(n, n);
      a = 0.5 * (a + a.transpose()).eval();
      const Vec b = kp.topRightCorner(n, 1);
      const double gamma = kp(n, n);
      Eigen::LLT<Mat> llt(a);
      if (llt.info() != Eigen::Success)
        throw ValidationError("projective_transform: image is unbounded (hyperplane crossing)");
      const Point c = -llt.solve(b);
      const double kappa = c.dot(a * c) - gamma;
      if (!(kappa > 0.0)) throw ValidationError("projective_transform: degenerate image");
      const Mat shape = (a / kappa).inverse();
      return ellipsoid(c, Mat(0.5 * (shape + shape.transpose())), name_);
    }
    case BodyKind::sublevel: {
      // Check that the image avoids the hyperplane at infinity on sampled boundary points.
      const auto dirs = sphere_directions(n, n == 2 ? 512 : 2048);
      double wmin = std::numeric_limits<double>::infinity();
      double wmax = -std::numeric_limits<double>::infinity();
      std::vector<Point> boundary;
      boundary.reserve(dirs.size());
      for (const auto& u : dirs) {
        const Point b = interior_ + exit_param(interior_, u) * u;
        boundary.push_back(b);
        const double w = last_coord(b);
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
      }
      const double wscale = std::max(std::abs(wmin), std::abs(wmax));
      if (!(wmin > 1e-6 * wscale || wmax < -1e-6 * wscale))
        throw ValidationError("projective_transform: image is unbounded (hyperplane crossing)");
      double radius = 0.0;
      for (const auto& b : boundary) radius = std::max(radius, apply_projective(m, b).norm());
      ConvexBody body = *this;
      body.chart_ = chart_ ? ProjMatrix((*chart_) * minv) : minv;
      body.interior_ = apply_projective(m, interior_);
      body.bounding_radius_ = 1.25 * radius;
      return body;
    }
  }
  return *this;
}

ConvexBody make_regular_polygon(int k, double circumradius) {
  require(k >= 3, "make_regular_polygon: need k >= 3");
  require(circumradius > 0.0 && std::isfinite(circumradius), "make_regular_polygon: bad radius");
  std::vector<Point> vs;
  for (int j = 0; j < k; ++j) {
    const double a = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * j / k;
    vs.push_back(make_vec({circumradius * std::cos(a), circumradius * std::sin(a)}));
  }
  return ConvexBody::polygon(vs, k == 3 ? "triangle" : (k == 6 ? "hexagon" : "regular_polygon"));
}

ConvexBody make_simplex(int n) {
  require(n >= 2 && n <= kMaxDim, "make_simplex: unsupported dimension");
  // Regular simplex: standard basis of R^{n+1} restricted to the hyperplane
  // sum x = 1, written in an orthonormal basis of that hyperplane.
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n + 1, n + 1);
  basis.col(0).setConstant(1.0 / std::sqrt(n + 1.0));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd q = qr.householderQ();
  std::vector<Point> vs;
  Eigen::VectorXd centroid = Eigen::VectorXd::Constant(n + 1, 1.0 / (n + 1));
  double radius = (Eigen::VectorXd::Unit(n + 1, 0) - centroid).norm();
  for (int i = 0; i <= n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n + 1, i) - centroid;
    Point p(n);
    for (int j = 0; j < n; ++j) p(j) = q.col(j + 1).dot(e) / radius;
    vs.push_back(p);
  }
  return ConvexBody::simplex(vs, n == 2 ? "triangle" : "simplex");
}

ConvexBody make_ball(int n) {
  require(n >= 2 && n <= kMaxDim, "make_ball: unsupported dimension");
  return ConvexBody::ellipsoid(Point::Zero(n), Mat::Identity(n, n), n == 2 ? "disk" : "ball");
}

ConvexBody make_superellipse(double p, double q) {
  require(p >= 1.0 && q >= 1.0 && std::isfinite(p) && std::isfinite(q),
          "make_superellipse: exponents must be >= 1");
  auto g = [p, q](const Point& x) { return std::pow(std::abs(x(0)), p) + std::pow(std::abs(x(1)), q); };
  return ConvexBody::sublevel(2, g, Point::Zero(2), std::sqrt(2.0), "superellipse");
}

}  // namespace hilbert
