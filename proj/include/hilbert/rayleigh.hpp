#pragma once

#include "hilbert/ball_quadrature.hpp"
#include "hilbert/convex_body.hpp"

#include <functional>
#include <vector>

namespace hilbert {

using PointFunction = std::function<double(const Point&)>;
using CovectorFunction = std::function<Covector(const Point&)>;

struct RayleighResult {
  double value = 0.0;
  double numerator = 0.0;    // integral of F*(df)^2
  double denominator = 0.0;  // integral of f^2
  double quadrature_error = 0.0;
};

/// Integral of F*(x, df_x)^2 over integral of f^2, both against the Hilbert
/// measure on B(x0, R) (2D, product quadrature). `grad` may be empty, then
/// central differences with step 1e-5 (shrunk near the boundary) are used.
/// f must vanish outside B(x0, R); this is checked on points just outside.
RayleighResult rayleigh_quotient(const ConvexBody& body, const PointFunction& f, const CovectorFunction& grad,
                                 double radius, const Point& x0, const QuadratureOptions& opt = {});

/// Central-difference gradient of f at x.
Covector numeric_gradient(const ConvexBody& body, const PointFunction& f, const Point& x);

struct RayleighEntry {
  double eps;
  double radius;
  double value;
  double error;
};

struct RayleighReport {
  double lambda_estimate = 0.0;
  double eps = 0.0;
  double radius = 0.0;
  double quadrature_error = 0.0;
  std::vector<RayleighEntry> table;
  bool dual_norm_exact = false;  // F*(d psi) evaluated rather than taken as 1

  /// Minimum over eps at one radius of the grid.
  double estimate_at(double radius) const;
};

/// The value of eps that stands for the normalized h -> 0 limit of the
/// family, the tent R - d(x0, x).
inline double tent_eps(int n) { return -(n - 1.0); }

/// Test functions f = exp(-h psi / 2) - exp(-h R / 2) with h = (n-1) + eps and
/// psi = d(x0, .), over a grid of (eps, R); eps = tent_eps(n) is the tent.
/// Returns the smallest quotient, an upper bound for the bottom of the spectrum.
RayleighReport lambda1_upper_estimate(const ConvexBody& body, const Point& x0, std::vector<double> eps_grid,
                                      std::vector<double> radius_grid, const QuadratureOptions& opt = {});

std::vector<double> default_eps_grid(int n);
std::vector<double> default_lambda_radii();

}  // namespace hilbert
