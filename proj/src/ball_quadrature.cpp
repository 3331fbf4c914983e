#include "hilbert/ball_quadrature.hpp"

#include "hilbert/local_norm.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/parallel.hpp"
#include "hilbert/sampling.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hilbert {

namespace {

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

// lambda = (1 + tanh z)/2 and 1 - lambda, both without cancellation.
void logistic(double z, double& lam, double& one_minus) {
  lam = 1.0 / (1.0 + std::exp(-2.0 * z));
  one_minus = 1.0 / (1.0 + std::exp(2.0 * z));
}

}  // namespace

DirectionChart::DirectionChart(const ConvexBody& body, const Point& x0, double zeta_max)
    : body_(&body), x0_(x0), polygon_(body.kind() == BodyKind::polytope), zeta_max_(zeta_max) {
  require(body.dim() == 2, "DirectionChart: 2D only");
  require(body.contains(x0), "DirectionChart: center is not interior");
  require(zeta_max > 0.0, "DirectionChart: zeta range must be positive");
}

Vec DirectionChart::direction(double param) const {
  param -= std::floor(param);
  if (!polygon_) {
    const double th = 2.0 * std::numbers::pi * param;
    return make_vec({std::cos(th), std::sin(th)});
  }
  const auto& vs = body_->vertices();
  const std::size_t k = vs.size();
  const double scaled = param * static_cast<double>(k);
  const std::size_t j = std::min(k - 1, static_cast<std::size_t>(scaled));
  const double zeta = zeta_max_ * (2.0 * (scaled - static_cast<double>(j)) - 1.0);
  double lam, om;
  logistic(zeta, lam, om);
  const Point& va = vs[j];
  const Point& vb = vs[(j + 1) % k];
  // Interpolate from the nearer vertex so the offset from it stays exact.
  const Point b = lam < 0.5 ? Point(va + lam * (vb - va)) : Point(vb - om * (vb - va));
  const Vec d = b - x0_;
  return d / d.norm();
}

std::vector<DirectionNode> DirectionChart::nodes(double panel, int order, int angles) const {
  std::vector<DirectionNode> out;
  if (!polygon_) {
    require(angles >= 8, "DirectionChart: too few angles");
    out.reserve(angles);
    for (int i = 0; i < angles; ++i) {
      const double th = 2.0 * std::numbers::pi * i / angles;
      Vec u = make_vec({std::cos(th), std::sin(th)});
      const ChordParams c = body_->chord_params(x0_, u);
      out.push_back({u, 2.0 * std::numbers::pi / angles, -c.t_minus, c.t_plus});
    }
    return out;
  }
  const GaussRule& g = gauss_legendre(order);
  const auto& vs = body_->vertices();
  const std::size_t k = vs.size();
  for (std::size_t j = 0; j < k; ++j) {
    const Point& va = vs[j];
    const Point& vb = vs[(j + 1) % k];
    const Vec edge = vb - va;
    // The backward exit point jumps edges where the reversed ray meets a vertex;
    // the integrand has a kink there, so those angles become panel ends.
    std::vector<double> cuts{-zeta_max_, zeta_max_};
    for (std::size_t w = 0; w < k; ++w) {
      if (w == j || w == (j + 1) % k) continue;
      const Vec back = x0_ - vs[w];
      const double den = cross2(edge, back);
      if (den == 0.0) continue;
      const double lam = cross2(x0_ - va, back) / den;
      if (!(lam > 0.0 && lam < 1.0)) continue;
      const double z = 0.5 * std::log(lam / (1.0 - lam));
      if (std::abs(z) < zeta_max_) cuts.push_back(z);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double len = cuts[c + 1] - cuts[c];
      if (len <= 0.0) continue;
      const int panels = std::max(1, static_cast<int>(std::ceil(len / panel)));
      const double h = len / panels;
      for (int pi = 0; pi < panels; ++pi) {
        const double mid = cuts[c] + (pi + 0.5) * h;
        for (std::size_t q = 0; q < g.nodes.size(); ++q) {
          const double zeta = mid + 0.5 * h * g.nodes[q];
          double lam, om;
          logistic(zeta, lam, om);
          const Point b = lam < 0.5 ? Point(va + lam * edge) : Point(vb - om * edge);
          const Vec d = b - x0_;
          const double r2 = d.squaredNorm();
          const double dtheta = cross2(d, edge) / r2 * 2.0 * lam * om;
          Vec u = d / std::sqrt(r2);
          const ChordParams ch = body_->chord_params(x0_, u);
          out.push_back({u, 0.5 * h * g.weights[q] * dtheta, -ch.t_minus, ch.t_plus});
        }
      }
    }
  }
  return out;
}

double density_on_ray(const ConvexBody& body, const Point& x0, const Vec& u, double a, double b, double s,
                      double density_tol) {
  const double e = std::exp(2.0 * s);
  const double t = a * b * std::expm1(2.0 * s) / (b + e * a);
  const double gap = b * (a + b) / (b + e * a);  // b - t
  const Point x = x0 + t * u;
  if (body.kind() == BodyKind::polytope && body.dim() == 2) {
    const auto& normals = body.facet_normals();
    const auto& offsets = body.facet_offsets();
    std::vector<double> slacks(normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) {
      const double nu = normals[i].dot(u);
      const double s0 = offsets[i] - normals[i].dot(x0);
      // Facets ahead of the ray: slack = nu (t_i - t) with t_i - t = (t_i - b) + (b - t).
      slacks[i] = nu > 0.0 ? nu * ((s0 / nu - b) + gap) : s0 - t * nu;
    }
    return unit_ball_volume_euclidean(2) / polygon_norm_from_slacks(body, slacks).unit_ball_area();
  }
  if (body.kind() == BodyKind::ellipsoid) {
    const Mat& am = body.shape_inverse();
    const Vec d = x - body.center();
    const Vec ad = am * d;
    // gamma(x) = (u^T A u) t_- t_+ for the chord of x along u.
    const double gamma = -u.dot(am * u) * (a + t) * gap;
    const Mat q = (ad * ad.transpose() - gamma * am) / (gamma * gamma);
    return std::sqrt(q.determinant());
  }
  return density(body, x, density_tol);
}

BallNodes ball_nodes(const ConvexBody& body, const Point& x0, double r_max,
                     const std::vector<double>& breakpoints, const QuadratureOptions& opt) {
  require(r_max > 0.0 && std::isfinite(r_max), "ball_nodes: bad radius");
  // The slack to the boundary is ~exp(-2 R) times the chord; past this it drops below double precision.
  require(r_max <= kMaxQuadratureRadius, "ball_nodes: radius above 18 is out of double precision reach");
  const DirectionChart chart(body, x0, r_max + opt.zeta_pad);
  const auto dirs = chart.nodes(opt.panel, opt.order, opt.angles);

  std::vector<double> cuts{0.0, r_max};
  for (double r : breakpoints)
    if (r > 0.0 && r < r_max) cuts.push_back(r);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const GaussRule& g = gauss_legendre(opt.order);
  std::vector<double> rs, rw;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double len = cuts[c + 1] - cuts[c];
    const int panels = std::max(1, static_cast<int>(std::ceil(len / opt.panel - 1e-9)));
    const double h = len / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = cuts[c] + (p + 0.5) * h;
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        rs.push_back(mid + 0.5 * h * g.nodes[q]);
        rw.push_back(0.5 * h * g.weights[q]);
      }
    }
  }

  const std::size_t nr = rs.size();
  const std::size_t total = dirs.size() * nr;
  BallNodes out;
  out.x.resize(total);
  out.s.resize(total);
  out.weight.resize(total);
  out.geometric.resize(total);
  out.density.resize(total);
  parallel::parallel_for(0, dirs.size(), [&](std::size_t di) {
    const DirectionNode& dn = dirs[di];
    for (std::size_t ri = 0; ri < nr; ++ri) {
      const std::size_t k = di * nr + ri;
      const double s = rs[ri];
      const double t = ray_param_at_distance(dn.a, dn.b, s);
      const double geo = dn.weight * rw[ri] * t * ray_param_derivative(dn.a, dn.b, s);
      const double h = density_on_ray(body, x0, dn.u, dn.a, dn.b, s, opt.density_tol);
      out.x[k] = x0 + t * dn.u;
      out.s[k] = s;
      out.geometric[k] = geo;
      out.density[k] = h;
      out.weight[k] = geo * h;
    }
  });
  return out;
}

}  // namespace hilbert
