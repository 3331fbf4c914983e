#pragma once

#include "hilbert/common.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hilbert {

/// Boundary crossings of the line through an interior point.
struct Chord {
  Point p_minus;  // exit in direction -v
  Point p_plus;   // exit in direction +v
  double tol;     // Euclidean boundary tolerance achieved (0 when exact)
};

/// The same chord expressed as parameters of p + t v, with t_minus < 0 < t_plus.
/// `tol` is measured in units of t.
struct ChordParams {
  double t_minus;
  double t_plus;
  double tol;
};

enum class BodyKind { polytope, ellipsoid, sublevel };

/// A bounded open convex body in R^n given by a containment oracle and a
/// ray-boundary oracle. Immutable once built; all queries are const and safe
/// to call concurrently.
class ConvexBody {
 public:
  using Function = std::function<double(const Point&)>;

  /// Convex hull of planar points. Degenerate hulls are rejected.
  static ConvexBody polygon(const std::vector<Point>& vertices, std::string name = "polygon");
  /// Simplex spanned by n+1 affinely independent points of R^n.
  static ConvexBody simplex(const std::vector<Point>& vertices, std::string name = "simplex");
  /// {x : (x-c)^T shape^{-1} (x-c) < 1} for a positive-definite `shape`.
  static ConvexBody ellipsoid(const Point& center, const Mat& shape, std::string name = "ellipsoid");
  /// {x : g(x) < 1}. `g` must have convex sublevel set {g < 1} containing
  /// `interior`, bounded by the Euclidean ball of `bounding_radius` about 0.
  static ConvexBody sublevel(int dim, Function g, const Point& interior, double bounding_radius,
                             std::string name = "sublevel");

  int dim() const { return dim_; }
  BodyKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Point& interior_point() const { return interior_; }
  double bounding_radius() const { return bounding_radius_; }
  /// Boundary root-finding tolerance (Euclidean), relative to the bounding radius.
  double boundary_tolerance() const { return 1e-12 * bounding_radius_; }

  /// Strict containment; boundary points are outside.
  bool contains(const Point& x) const;

  /// Chord through p along v; validates p inside and v != 0.
  Chord chord(const Point& p, const Vec& v) const;
  /// Unvalidated hot-path version of chord().
  ChordParams chord_params(const Point& p, const Vec& v) const;
  /// Exit parameter t > 0 of the ray p + t v (unvalidated).
  double exit_param(const Point& p, const Vec& v) const;

  /// Unit outward normal at a boundary point (a facet normal for polytopes).
  Vec outward_normal(const Point& boundary_point) const;

  /// Image under the projective map x -> [M (x,1)]. Throws when the image
  /// meets the hyperplane at infinity.
  ConvexBody projective_transform(const ProjMatrix& m) const;

  // Polytope data: vertices (counter-clockwise for polygons), unit facet
  // normals n_i and offsets b_i with body = {n_i . x < b_i}.
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Vec>& facet_normals() const { return normals_; }
  const std::vector<double>& facet_offsets() const { return offsets_; }

  // Ellipsoid data: center and inverse shape matrix A, body = {(x-c)^T A (x-c) < 1}.
  const Point& center() const { return center_; }
  const Mat& shape_inverse() const { return shape_inv_; }

 private:
  ConvexBody() = default;

  double sublevel_value(const Point& x) const;
  double sublevel_exit(const Point& p, const Vec& unit_dir) const;
  void check_point(const Point& x, const char* what) const;

  int dim_ = 0;
  BodyKind kind_ = BodyKind::polytope;
  std::string name_;
  Point interior_;
  double bounding_radius_ = 0.0;

  std::vector<Point> vertices_;
  std::vector<Vec> normals_;
  std::vector<double> offsets_;

  Point center_;
  Mat shape_inv_;

  Function g_;
  // Inverse projective chart applied before g (for transformed sublevel bodies).
  std::optional<ProjMatrix> chart_;
};

/// Applies x -> [M (x,1)] in the affine chart. Throws if the image is at infinity.
Point apply_projective(const ProjMatrix& m, const Point& x);

// Named constructors used throughout the tools and tests.
ConvexBody make_regular_polygon(int k, double circumradius);
ConvexBody make_simplex(int n);
ConvexBody make_ball(int n);
ConvexBody make_superellipse(double p, double q);

}  // namespace hilbert
