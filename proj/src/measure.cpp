#include "hilbert/measure.hpp"

#include "hilbert/local_norm.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/parallel.hpp"
#include "hilbert/sampling.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace hilbert {

MeasureEstimate measure(const ConvexBody& body, const Region& region, const Box& box, long long samples,
                        std::uint64_t seed, int replicates) {
  const int n = body.dim();
  require(static_cast<int>(box.lo.size()) == n && static_cast<int>(box.hi.size()) == n,
          "measure: box dimension mismatch");
  require(replicates >= 2, "measure: need at least two replicates");
  double vol = 1.0;
  for (int i = 0; i < n; ++i) vol *= box.hi(i) - box.lo(i);
  require(vol > 0.0 && std::isfinite(vol), "measure: sampler box has zero volume");
  require(samples >= replicates, "measure: too few samples");

  const long long per = samples / replicates;
  const int g = std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(per), 1.0 / n) + 1e-9)));
  long long cells = 1;
  for (int i = 0; i < n; ++i) cells *= g;

  std::vector<double> means(replicates, 0.0);
  parallel::parallel_for(0, static_cast<std::size_t>(replicates), [&](std::size_t r) {
    auto rng = make_rng(seed, 1000 + r);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double sum = 0.0, comp = 0.0;  // Kahan
    std::vector<int> idx(n, 0);
    Point x(n);
    for (long long c = 0; c < cells; ++c) {
      long long rem = c;
      for (int i = 0; i < n; ++i) {
        idx[i] = static_cast<int>(rem % g);
        rem /= g;
      }
      for (int i = 0; i < n; ++i)
        x(i) = box.lo(i) + (box.hi(i) - box.lo(i)) * (idx[i] + unif(rng)) / g;
      if (!region(x) || !body.contains(x)) continue;
      const double y = density(body, x, 1e-8) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    means[r] = vol * sum / static_cast<double>(cells);
  });

  MeasureEstimate out;
  out.method = "monte_carlo";
  out.samples = cells * replicates;
  out.value = std::accumulate(means.begin(), means.end(), 0.0) / replicates;
  double var = 0.0;
  for (double m : means) var += (m - out.value) * (m - out.value);
  var /= (replicates - 1);
  out.std_error = std::sqrt(var / replicates);
  const boost::math::students_t dist(replicates - 1);
  out.ci95 = boost::math::quantile(boost::math::complement(dist, 0.025)) * out.std_error;
  return out;
}

Box ball_bounding_box(const ConvexBody& body, const Point& x0, double radius) {
  const int n = body.dim();
  std::vector<Point> pts;
  if (n == 2) {
    pts = ball_boundary_polyline(body, {x0, radius}, 512);
  } else {
    for (const auto& u : sphere_directions(n, 4000)) pts.push_back(point_at_distance(body, x0, u, radius));
  }
  Point lo = x0, hi = x0;
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec pad = 0.02 * (hi - lo) + Vec::Constant(n, 1e-12);
  return {lo - pad, hi + pad};
}

MeasureEstimate ball_measure(const ConvexBody& body, const Point& x0, double radius, const QuadratureOptions& opt) {
  require(radius >= 0.0 && std::isfinite(radius), "ball_measure: bad radius");
  MeasureEstimate out;
  out.method = "quadrature";
  if (radius == 0.0) return out;
  auto integrate = [&](const QuadratureOptions& o, long long& count) {
    const BallNodes nodes = ball_nodes(body, x0, radius, {}, o);
    count = static_cast<long long>(nodes.weight.size());
    double sum = 0.0;
    for (double w : nodes.weight) sum += w;
    return sum;
  };
  QuadratureOptions coarse = opt;
  coarse.panel = 2.0 * opt.panel;
  coarse.angles = std::max(8, opt.angles / 2);
  long long nf = 0, nc = 0;
  out.value = integrate(opt, nf);
  const double rough = integrate(coarse, nc);
  out.std_error = std::abs(out.value - rough);
  out.ci95 = out.std_error;
  out.samples = nf;
  return out;
}

double curve_length(const ConvexBody& body, const std::vector<Point>& polyline, bool closed) {
  for (const auto& p : polyline) require(body.contains(p), "curve_length: vertex outside the body");
  if (polyline.size() < 2) return 0.0;
  const std::size_t segs = closed ? polyline.size() : polyline.size() - 1;
  std::vector<double> len(segs);
  parallel::parallel_for(0, segs, [&](std::size_t i) {
    len[i] = distance_unchecked(body, polyline[i], polyline[(i + 1) % polyline.size()]);
  });
  double sum = 0.0;
  for (double l : len) sum += l;
  return sum;
}

std::vector<Point> sphere_polyline(const ConvexBody& body, const Point& x0, double radius, long long m) {
  require(body.dim() == 2, "sphere_polyline: 2D only");
  require(m >= 8, "sphere_polyline: need m >= 8");
  const DirectionChart chart(body, x0, radius + 10.0);
  std::vector<Point> pts(static_cast<std::size_t>(m));
  parallel::parallel_for(0, pts.size(), [&](std::size_t i) {
    pts[i] = point_at_distance(body, x0, chart.direction(static_cast<double>(i) / m), radius);
  });
  return pts;
}

namespace {

// Smooth bodies: integral over the angle of F(x, dx/dtheta) for x = x0 + t u,
// with the chord-end derivatives from the boundary normals. The integrand is
// smooth and periodic, so the trapezoid rule converges fast.
double tangent_length(const ConvexBody& body, const Point& x0, double radius, long long m) {
  const double big = std::expm1(2.0 * radius);
  std::vector<double> f(static_cast<std::size_t>(m));
  parallel::parallel_for(0, f.size(), [&](std::size_t i) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / m;
    const Vec u = make_vec({std::cos(th), std::sin(th)});
    const Vec up = make_vec({-std::sin(th), std::cos(th)});
    const ChordParams c = body.chord_params(x0, u);
    const double a = -c.t_minus, b = c.t_plus;
    const Vec na = body.outward_normal(x0 - a * u);
    const Vec nb = body.outward_normal(x0 + b * u);
    const double da = -a * up.dot(na) / u.dot(na);
    const double db = -b * up.dot(nb) / u.dot(nb);
    const double den = b + (big + 1.0) * a;
    const double t = a * b * big / den;
    const double dt = (b * b * big * da + a * a * big * (big + 1.0) * db) / (den * den);
    const Vec w = dt * u + t * up;
    const ChordParams cw = body.chord_params(x0 + t * u, w);
    f[i] = 0.5 * (-1.0 / cw.t_minus + 1.0 / cw.t_plus);
  });
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum * 2.0 * std::numbers::pi / m;
}

}  // namespace

LengthEstimate sphere_length(const ConvexBody& body, const Point& x0, double radius, double rel_tol,
                             long long max_vertices) {
  require(body.dim() == 2, "sphere_length: 2D only");
  require(radius > 0.0 && std::isfinite(radius), "sphere_length: bad radius");
  require(body.contains(x0), "sphere_length: center outside the body");
  const bool polygon = body.kind() == BodyKind::polytope;
  auto length = [&](long long m) {
    return polygon ? curve_length(body, sphere_polyline(body, x0, radius, m), true)
                   : tangent_length(body, x0, radius, m);
  };
  long long m = polygon ? 2048 : 256;
  double prev = length(m);
  LengthEstimate out;
  while (true) {
    m *= 2;
    const double cur = length(m);
    out.value = cur;
    out.vertices = m;
    out.rel_change = std::abs(cur - prev) / cur;
    // Inscribed polylines converge at second order in the vertex spacing.
    out.richardson = polygon ? cur + (cur - prev) / 3.0 : cur;
    if (out.rel_change < rel_tol) return out;
    if (2 * m > max_vertices) throw ConvergenceError("sphere_length: vertex budget exhausted");
    prev = cur;
  }
}

void classify_growth(GrowthCurve& curve) {
  curve.classification = "undetermined";
  const auto& r = curve.radii;
  if (r.size() < 3) return;
  const double half = 0.5 * (r.front() + r.back());
  std::vector<double> xs, lx, ly;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < half || !(curve.volumes[i].value > 0.0)) continue;
    xs.push_back(r[i]);
    lx.push_back(std::log(r[i]));
    ly.push_back(std::log(curve.volumes[i].value));
  }
  if (xs.size() < 3) return;
  auto fit = [&](const std::vector<double>& x, double& slope) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (ly[i] - my);
    }
    slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = ly[i] - (my + slope * (x[i] - mx));
      ss += e * e;
    }
    return std::sqrt(ss / n);
  };
  curve.poly_residual = fit(lx, curve.fit_poly_exponent);
  curve.exp_residual = fit(xs, curve.fit_exp_rate);
  curve.classification = curve.poly_residual < curve.exp_residual ? "polynomial" : "exponential";
}

GrowthCurve growth_curve(const ConvexBody& body, const Point& x0, const std::vector<double>& radii,
                         const QuadratureOptions& opt) {
  require(!radii.empty(), "growth_curve: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && std::isfinite(radii[i]), "growth_curve: radii must be positive");
    if (i > 0) require(radii[i] > radii[i - 1], "growth_curve: radii must be strictly increasing");
  }
  const double r_max = radii.back();
  auto cumulative = [&](const QuadratureOptions& o) {
    const BallNodes nodes = ball_nodes(body, x0, r_max, radii, o);
    std::vector<double> v(radii.size(), 0.0);
    // Nodes are laid out direction-major; accumulate per radius bucket.
    for (std::size_t k = 0; k < nodes.s.size(); ++k) {
      const auto it = std::lower_bound(radii.begin(), radii.end(), nodes.s[k]);
      v[static_cast<std::size_t>(it - radii.begin())] += nodes.weight[k];
    }
    for (std::size_t i = 1; i < v.size(); ++i) v[i] += v[i - 1];
    return std::make_pair(v, static_cast<long long>(nodes.s.size()));
  };
  const auto [fine, count] = cumulative(opt);
  QuadratureOptions coarse = opt;
  coarse.panel = 2.0 * opt.panel;
  coarse.angles = std::max(8, opt.angles / 2);
  const auto rough = cumulative(coarse).first;

  GrowthCurve out;
  out.radii = radii;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    MeasureEstimate m;
    m.method = "quadrature";
    m.value = fine[i];
    m.std_error = std::abs(fine[i] - rough[i]);
    m.ci95 = m.std_error;
    m.samples = count;
    out.volumes.push_back(m);
  }
  classify_growth(out);
  return out;
}

FolnerPoint folner_ratio(const ConvexBody& body, const Point& x0, double radius) {
  require(body.dim() == 2, "folner_ratio: 2D only");
  const LengthEstimate len = sphere_length(body, x0, radius);
  const MeasureEstimate vol = ball_measure(body, x0, radius);
  return {radius, len.value, vol.value, len.value / vol.value};
}

SandwichReport sphere_area_sandwich_check(const ConvexBody& body, const std::vector<Point>& centers, double r,
                                          double cap) {
  require(body.dim() == 2, "sphere_area_sandwich_check: 2D only");
  require(!centers.empty(), "sphere_area_sandwich_check: no centers");
  SandwichReport rep;
  rep.r = r;
  rep.min_length = std::numeric_limits<double>::infinity();
  rep.max_length = 0.0;
  for (const auto& c : centers) {
    const double len = sphere_length(body, c, r).value;
    rep.lengths.push_back(len);
    rep.min_length = std::min(rep.min_length, len);
    rep.max_length = std::max(rep.max_length, len);
  }
  rep.spread = rep.max_length / rep.min_length;
  rep.within_cap = rep.spread <= cap;
  return rep;
}

double ball_measure_lower_bound(int n, double r) {
  const double q = std::expm1(2.0 * r) / std::expm1(2.0 * (r + 1.0));
  return unit_ball_volume_euclidean(n) / (std::pow(4.0, n) * std::exp(2.0 * n * r)) * std::pow(q, n);
}

double ball_measure_upper_bound(int n, double r) {
  return std::pow(0.5 * std::expm1(4.0 * r), n) * unit_ball_volume_euclidean(n);
}

}  // namespace hilbert
