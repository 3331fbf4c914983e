#include "hilbert/rayleigh.hpp"

#include "hilbert/metric.hpp"
#include "hilbert/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hilbert {

namespace {

QuadratureOptions coarse_of(const QuadratureOptions& opt) {
  QuadratureOptions c = opt;
  c.panel = 2.0 * opt.panel;
  c.angles = std::max(8, opt.angles / 2);
  return c;
}

bool exact_dual(const ConvexBody& body) { return body.kind() != BodyKind::sublevel; }

double dual_norm(const ConvexBody& body, const Point& x, const Covector& w) {
  if (w.norm() == 0.0) return 0.0;
  return finsler_dual_norm(body, x, w).value;
}

// Points just beyond the sphere S(x0, R) along a fan of directions.
void check_support(const ConvexBody& body, const PointFunction& f, const Point& x0, double radius, double scale) {
  const int m = 64;
  const double s = radius * (1.0 + 1e-6) + 1e-9;
  for (int k = 0; k < m; ++k) {
    const double a = 2.0 * M_PI * (k + 0.5) / m;
    Vec u(2);
    u << std::cos(a), std::sin(a);
    const Point p = point_at_distance(body, x0, u, s);
    if (!body.contains(p)) continue;
    require(std::abs(f(p)) <= 1e-12 * scale, "rayleigh_quotient: f does not vanish outside B(x0, R)");
  }
}

}  // namespace

Covector numeric_gradient(const ConvexBody& body, const PointFunction& f, const Point& x) {
  const int n = body.dim();
  Covector g(n);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = 1.0;
    const double room = std::min(body.exit_param(x, e), body.exit_param(x, -e));
    const double h = 1e-5 * std::min(1.0, 0.5 * room);
    g(i) = (f(x + h * e) - f(x - h * e)) / (2.0 * h);
  }
  return g;
}

RayleighResult rayleigh_quotient(const ConvexBody& body, const PointFunction& f, const CovectorFunction& grad,
                                 double radius, const Point& x0, const QuadratureOptions& opt) {
  require(body.dim() == 2, "rayleigh_quotient: 2D only");
  require(radius > 0.0 && std::isfinite(radius), "rayleigh_quotient: bad radius");
  require(static_cast<bool>(f), "rayleigh_quotient: no function");
  require(body.contains(x0), "rayleigh_quotient: center outside the body");

  auto integrate = [&](const QuadratureOptions& o) {
    const BallNodes nodes = ball_nodes(body, x0, radius, {}, o);
    const std::size_t m = nodes.x.size();
    std::vector<double> num(m), den(m);
    parallel::parallel_for(0, m, [&](std::size_t k) {
      const Point& x = nodes.x[k];
      const double v = f(x);
      const Covector w = grad ? grad(x) : numeric_gradient(body, f, x);
      const double d = dual_norm(body, x, w);
      num[k] = nodes.weight[k] * d * d;
      den[k] = nodes.weight[k] * v * v;
    });
    RayleighResult r;
    double peak = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      r.numerator += num[k];
      r.denominator += den[k];
      if (nodes.weight[k] > 0.0) peak = std::max(peak, std::sqrt(den[k] / nodes.weight[k]));
    }
    require(r.denominator > 0.0, "rayleigh_quotient: f vanishes on the ball");
    r.value = r.numerator / r.denominator;
    return std::make_pair(r, peak);
  };
  auto [out, peak] = integrate(opt);
  check_support(body, f, x0, radius, std::max(peak, 1e-300));
  const RayleighResult rough = integrate(coarse_of(opt)).first;
  out.quadrature_error = std::abs(out.value - rough.value);
  return out;
}

double RayleighReport::estimate_at(double r) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : table)
    if (e.radius == r) best = std::min(best, e.value);
  require(std::isfinite(best), "RayleighReport: radius not in the grid");
  return best;
}

std::vector<double> default_eps_grid(int n) { return {tent_eps(n), -0.5, -0.25, -0.1, 0.0, 0.05, 0.1, 0.25, 0.5}; }

std::vector<double> default_lambda_radii() { return {4.0, 8.0, 12.0, 16.0}; }

RayleighReport lambda1_upper_estimate(const ConvexBody& body, const Point& x0, std::vector<double> eps_grid,
                                      std::vector<double> radius_grid, const QuadratureOptions& opt) {
  require(body.dim() == 2, "lambda1_upper_estimate: 2D only");
  require(!eps_grid.empty() && !radius_grid.empty(), "lambda1_upper_estimate: empty grid");
  require(body.contains(x0), "lambda1_upper_estimate: center outside the body");
  const int n = body.dim();
  for (double e : eps_grid)
    require(std::isfinite(e) && e >= tent_eps(n), "lambda1_upper_estimate: eps below the tent limit");
  for (double r : radius_grid) require(r > 0.0 && std::isfinite(r), "lambda1_upper_estimate: bad radius");
  std::sort(radius_grid.begin(), radius_grid.end());
  radius_grid.erase(std::unique(radius_grid.begin(), radius_grid.end()), radius_grid.end());
  const double r_max = radius_grid.back();
  const bool exact = exact_dual(body);

  // Every member of the family is a function of psi = d(x0, .), so
  // F*(df) = |g'(psi)| F*(d psi); only F*(d psi) depends on the body.
  auto table = [&](const QuadratureOptions& o) {
    const BallNodes nodes = ball_nodes(body, x0, r_max, radius_grid, o);
    const std::size_t m = nodes.x.size();
    std::vector<double> kappa2(m, 1.0);
    if (exact) {
      parallel::parallel_for(0, m, [&](std::size_t k) {
        // Nodes that rounded onto the boundary keep the value 1 it has in exact arithmetic.
        if (!body.contains(nodes.x[k]) || nodes.s[k] == 0.0) return;
        const Covector w = distance_gradient(body, x0, nodes.x[k]);
        if (w.allFinite()) kappa2[k] = std::pow(dual_norm(body, nodes.x[k], w), 2);
      });
    }
    std::vector<RayleighEntry> out;
    for (double r : radius_grid) {
      for (double e : eps_grid) {
        const bool tent = e == tent_eps(n);
        const double h = (n - 1.0) + e;
        const double floor = tent ? 0.0 : std::exp(-0.5 * h * r);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double s = nodes.s[k];
          if (s >= r) continue;
          double v, dv;
          if (tent) {
            v = r - s;
            dv = 1.0;
          } else {
            const double g = std::exp(-0.5 * h * s);
            v = g - floor;
            dv = 0.5 * h * g;
          }
          num += nodes.weight[k] * dv * dv * kappa2[k];
          den += nodes.weight[k] * v * v;
        }
        require(den > 0.0, "lambda1_upper_estimate: test function vanishes");
        out.push_back({e, r, num / den, 0.0});
      }
    }
    return out;
  };

  RayleighReport rep;
  rep.dual_norm_exact = exact;
  rep.table = table(opt);
  const auto rough = table(coarse_of(opt));
  for (std::size_t i = 0; i < rep.table.size(); ++i) rep.table[i].error = std::abs(rep.table[i].value - rough[i].value);
  std::size_t best = 0;
  for (std::size_t i = 1; i < rep.table.size(); ++i)
    if (rep.table[i].value < rep.table[best].value) best = i;
  rep.lambda_estimate = rep.table[best].value;
  rep.eps = rep.table[best].eps;
  rep.radius = rep.table[best].radius;
  rep.quadrature_error = rep.table[best].error;
  return rep;
}

}  // namespace hilbert
