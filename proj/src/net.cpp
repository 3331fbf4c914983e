#include "hilbert/net.hpp"

#include "hilbert/ball_quadrature.hpp"
#include "hilbert/local_norm.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/sampling.hpp"

#include <boost/math/distributions/normal.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>
#include <numbers>

namespace hilbert {

namespace {

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

constexpr int kWindowSamples = 24;

}  // namespace

NetIndex::NetIndex(const ConvexBody& body, const Point& center, double shell_width)
    : body_(&body), center_(center), width_(shell_width), planar_(body.dim() == 2) {
  require(shell_width > 0.0 && std::isfinite(shell_width), "NetIndex: bad shell width");
  require(body.contains(center), "NetIndex: center is not interior");
}

double NetIndex::angle_of(const Point& x) const { return std::atan2(x(1) - center_(1), x(0) - center_(0)); }

int NetIndex::add(const Point& x) { return add(x, distance_unchecked(*body_, center_, x)); }

int NetIndex::add(const Point& x, double s) {
  const int id = size();
  points_.push_back(x);
  radial_.push_back(s);
  const auto shell = static_cast<std::size_t>(s / width_);
  if (planar_) {
    if (shells_.size() <= shell) shells_.resize(shell + 1);
    shells_[shell].emplace(angle_of(x), id);
  } else {
    if (flat_.size() <= shell) flat_.resize(shell + 1);
    flat_[shell].push_back(id);
  }
  return id;
}

bool NetIndex::window(const Point& x, double s, double r, double& lo, double& hi) const {
  if (!planar_ || s <= r) return false;
  // Tangent lines of S(x, r) at sample points cut out a polygon around the
  // ball. Work in the frame where the unit ball at x is round, so that the
  // samples spread over the whole sphere and the 2x2 solves stay well posed.
  const Mat f = unit_ball_frame(*body_, x);
  const Mat finv = f.inverse();
  std::vector<Vec> bs(kWindowSamples), gs(kWindowSamples);
  for (int j = 0; j < kWindowSamples; ++j) {
    const double ph = 2.0 * std::numbers::pi * j / kWindowSamples;
    Vec u = f * make_vec({std::cos(ph), std::sin(ph)});
    u.normalize();
    const Point b = point_at_distance(*body_, x, u, r);
    bs[j] = finv * (b - x);
    gs[j] = f.transpose() * finsler_norm_gradient(*body_, b, b - x);
  }
  const Vec c = finv * (center_ - x);
  bool inside = true;
  for (int j = 0; j < kWindowSamples; ++j) inside = inside && gs[j].dot(c - bs[j]) < 0.0;
  if (inside) return false;
  double reach = 0.0;
  for (const auto& b : bs) reach = std::max(reach, b.norm());
  const Vec dx = x - center_;
  double amin = 0.0, amax = 0.0;
  for (int j = 0; j < kWindowSamples; ++j) {
    const Vec& g0 = gs[j];
    const Vec& g1 = gs[(j + 1) % kWindowSamples];
    const double det = cross2(g0, g1);
    if (!(std::abs(det) > 1e-9 * g0.norm() * g1.norm())) return false;
    const double r0 = g0.dot(bs[j]), r1 = g1.dot(bs[(j + 1) % kWindowSamples]);
    const Vec w = make_vec({(r0 * g1(1) - r1 * g0(1)) / det, (g0(0) * r1 - g1(0) * r0) / det});
    if (!(w.norm() < 50.0 * reach)) return false;
    const Vec y = dx + f * w;
    if (!(dx.dot(y) > 0.0)) return false;  // the polygon reaches behind the center
    const double a = std::atan2(cross2(dx, y), dx.dot(y));
    amin = std::min(amin, a);
    amax = std::max(amax, a);
  }
  const double base = angle_of(x);
  const double pad = 1e-6 * (amax - amin) + 1e-13;
  lo = base + amin - pad;
  hi = base + amax + pad;
  return true;
}

std::vector<int> NetIndex::candidates(const Point& x, double s, double r) const {
  std::vector<int> out;
  const double a = std::max(0.0, s - r);
  const auto first = static_cast<std::size_t>(a / width_);
  const auto last = static_cast<std::size_t>((s + r) / width_);
  if (planar_) {
    double lo = 0.0, hi = 0.0;
    const bool narrow = window(x, s, r, lo, hi);
    for (std::size_t k = first; k <= last && k < shells_.size(); ++k) {
      const auto& sh = shells_[k];
      auto take = [&](double l, double h) {
        for (auto it = sh.lower_bound(l); it != sh.end() && it->first <= h; ++it) out.push_back(it->second);
      };
      if (!narrow) {
        for (const auto& e : sh) out.push_back(e.second);
      } else if (lo < -std::numbers::pi) {
        take(lo + 2.0 * std::numbers::pi, std::numbers::pi);
        take(-std::numbers::pi, hi);
      } else if (hi > std::numbers::pi) {
        take(lo, std::numbers::pi);
        take(-std::numbers::pi, hi - 2.0 * std::numbers::pi);
      } else {
        take(lo, hi);
      }
    }
  } else {
    for (std::size_t k = first; k <= last && k < flat_.size(); ++k)
      out.insert(out.end(), flat_[k].begin(), flat_[k].end());
  }
  return out;
}

std::vector<std::pair<int, double>> NetIndex::within_with_distance(const Point& x, double r) const {
  const double s = distance_unchecked(*body_, center_, x);
  std::vector<std::pair<int, double>> out;
  for (int i : candidates(x, s, r)) {
    if (std::abs(radial_[i] - s) > r) continue;
    const double d = distance_unchecked(*body_, x, points_[i]);
    if (d <= r) out.emplace_back(i, d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> NetIndex::within(const Point& x, double r) const {
  std::vector<int> out;
  for (const auto& e : within_with_distance(x, r)) out.push_back(e.first);
  return out;
}

NetIndex Net::index() const {
  require(body != nullptr, "Net: no body");
  NetIndex idx(*body, domain_center, epsilon);
  for (std::size_t i = 0; i < points.size(); ++i) idx.add(points[i], radial[i]);
  return idx;
}

namespace {

// Halton pairs with a seeded Cranley-Patterson shift, mapped to the ball.
class ProbeStream {
 public:
  ProbeStream(const ConvexBody& body, const Point& x0, double radius, std::uint64_t seed)
      : body_(body), x0_(x0), radius_(radius) {
    auto rng = make_rng(seed, 0x70726f6265);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i <= body.dim(); ++i) shift_.push_back(u(rng));
    if (body.dim() == 2 && radius > 0.0) chart_ = std::make_unique<DirectionChart>(body, x0, radius + 10.0);
  }

  Point next() {
    ++index_;
    const int n = body_.dim();
    auto coord = [&](int k) {
      const double v = radical_inverse(index_, kPrimes[k]) + shift_[k];
      return v - std::floor(v);
    };
    if (radius_ == 0.0) return x0_;
    const double s = radius_ * std::sqrt(coord(0));
    Vec u(n);
    if (chart_) {
      u = chart_->direction(coord(1));
    } else {
      const boost::math::normal_distribution<double> nd;
      for (int k = 0; k < n; ++k) {
        // coordinate 0 is the radius, directions use the next n
        const double c = std::clamp(coord(k + 1), 1e-12, 1.0 - 1e-12);
        u(k) = boost::math::quantile(nd, c);
      }
      if (u.norm() == 0.0) u(0) = 1.0;
      u.normalize();
    }
    return point_at_distance(body_, x0_, u, s);
  }

 private:
  static constexpr int kPrimes[9] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  const ConvexBody& body_;
  Point x0_;
  double radius_;
  std::vector<double> shift_;
  std::unique_ptr<DirectionChart> chart_;
  std::uint64_t index_ = 0;
};

std::vector<Vec> candidate_directions(const ConvexBody& body, const Point& x, int m, double phase) {
  std::vector<Vec> out;
  if (body.dim() == 2) {
    const Mat f = unit_ball_frame(body, x);
    for (int j = 0; j < m; ++j) {
      const double ph = phase + 2.0 * std::numbers::pi * j / m;
      Vec u = f * make_vec({std::cos(ph), std::sin(ph)});
      out.push_back(u / u.norm());
    }
    return out;
  }
  return sphere_directions(body.dim(), m << (body.dim() - 2));
}

}  // namespace

std::vector<Point> ball_probes(const ConvexBody& body, const Point& x0, double radius, int count,
                               std::uint64_t seed) {
  require(count >= 0, "ball_probes: negative count");
  require(radius >= 0.0 && std::isfinite(radius), "ball_probes: bad radius");
  require(body.contains(x0), "ball_probes: center is not interior");
  ProbeStream stream(body, x0, radius, seed);
  std::vector<Point> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

Net build_net(const ConvexBody& body, const Point& x0, double domain_radius, double epsilon, std::uint64_t seed,
              const NetOptions& opt) {
  require(epsilon > 0.0 && std::isfinite(epsilon), "build_net: epsilon must be positive");
  require(domain_radius >= 0.0 && std::isfinite(domain_radius), "build_net: bad domain radius");
  require(static_cast<int>(x0.size()) == body.dim() && body.contains(x0), "build_net: center is not interior");
  require(opt.k_probe >= 1 && opt.candidates >= 4, "build_net: bad options");

  NetIndex idx(body, x0, epsilon);
  auto rng = make_rng(seed, 0x6e6574);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // A hair beyond eps so that rounding never puts a candidate inside the eps-ball.
  const double step = epsilon * (1.0 + 1e-9);

  // Candidates on the eps-sphere of point i; accepted ones join the queue.
  std::deque<int> queue;
  auto expand = [&](int i, int m) {
    const Point xi = idx.point(i);
    std::vector<int> local = idx.within(xi, 2.0 * epsilon);
    const double phase = 2.0 * std::numbers::pi * unif(rng) / m;
    int blocker = -1;  // consecutive candidates are usually blocked by the same point
    for (const Vec& u : candidate_directions(body, xi, m, phase)) {
      const Point c = point_at_distance(body, xi, u, step);
      if (!body.contains(c)) continue;
      if (blocker >= 0 && distance_unchecked(body, c, idx.point(blocker)) < epsilon) continue;
      const double sc = distance_unchecked(body, x0, c);
      if (sc > domain_radius) continue;
      blocker = -1;
      for (int j : local) {
        if (distance_unchecked(body, c, idx.point(j)) < epsilon) {
          blocker = j;
          break;
        }
      }
      if (blocker >= 0) continue;
      const int id = idx.add(c, sc);
      local.push_back(id);
      queue.push_back(id);
    }
  };
  // Coarse growth, then a dense sweep of every eps-sphere. A gap in the
  // covering is bounded by arcs of eps-spheres, so the sweep finds every gap
  // wider than its angular step.
  std::size_t swept = 0;
  auto grow = [&] {
    for (;;) {
      while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        expand(i, opt.candidates);
      }
      if (swept == static_cast<std::size_t>(idx.size())) break;
      expand(static_cast<int>(swept++), opt.sweep_candidates);
    }
  };

  idx.add(x0, 0.0);
  queue.push_back(0);
  grow();

  Net net;
  ProbeStream probes(body, x0, domain_radius, seed);
  const long long max_probes = 200LL * opt.k_probe + 1000000;
  int streak = 0;
  double cover = 0.0;
  while (streak < opt.k_probe) {
    if (net.probes >= max_probes) throw ConvergenceError("build_net: covering certificate did not settle");
    const Point p = probes.next();
    ++net.probes;
    const auto near = idx.within_with_distance(p, epsilon);
    if (near.empty()) {
      queue.push_back(idx.add(p));
      grow();
      ++net.probe_insertions;
      streak = 0;
      cover = 0.0;
      continue;
    }
    double dmin = near.front().second;
    for (const auto& e : near) dmin = std::min(dmin, e.second);
    cover = std::max(cover, dmin);
    ++streak;
  }

  net.body = std::make_shared<const ConvexBody>(body);
  net.epsilon = epsilon;
  net.domain_center = x0;
  net.domain_radius = domain_radius;
  net.covering_radius_est = cover;
  net.seed = seed;
  net.points.reserve(idx.size());
  for (int i = 0; i < idx.size(); ++i) {
    net.points.push_back(idx.point(i));
    net.radial.push_back(idx.radial(i));
  }
  return net;
}

double log_cardinality_bound(int n, double eps, double r) {
  require(n >= 1 && eps > 0.0 && r >= 0.0, "log_cardinality_bound: bad arguments");
  const double inner = std::log(std::expm1(8.0 * r + 2.0 * eps)) + std::log(std::expm1(eps + 2.0)) -
                       std::log(std::expm1(eps));
  return n * eps + n * std::numbers::ln2 + n * inner;
}

bool cardinality_bound_check(const Net& net, const Point& x, double r) {
  require(net.body != nullptr, "cardinality_bound_check: empty net");
  require(net.body->contains(x), "cardinality_bound_check: point is not interior");
  const ConvexBody& body = *net.body;
  const double s = distance_unchecked(body, net.domain_center, x);
  long long count = 0;
  for (int i = 0; i < net.size(); ++i) {
    if (std::abs(net.radial[i] - s) > r) continue;
    if (distance_unchecked(body, x, net.points[i]) <= r) ++count;
  }
  return count == 0 || std::log(static_cast<double>(count)) <= log_cardinality_bound(body.dim(), net.epsilon, r);
}

void write_net_csv(std::ostream& out, const Net& net) {
  const int n = net.body ? net.body->dim() : 0;
  for (int k = 0; k < n; ++k) out << (k ? "," : "") << "x" << k;
  out << ",radial\n";
  out << std::setprecision(17);
  for (int i = 0; i < net.size(); ++i) {
    for (int k = 0; k < n; ++k) out << (k ? "," : "") << net.points[i](k);
    out << "," << net.radial[i] << "\n";
  }
}

}  // namespace hilbert
