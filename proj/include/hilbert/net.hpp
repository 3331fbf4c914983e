#pragma once

#include "hilbert/convex_body.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <vector>

namespace hilbert {

// Spatial index for points of a Hilbert ball, keyed by the distance to a fixed
// center (shells of fixed width) and, in 2D, by the angle seen from the center.
// A query for B(x, r) only visits shells meeting [s - r, s + r] and, inside
// them, an angular window that provably contains B(x, r).
class NetIndex {
 public:
  NetIndex(const ConvexBody& body, const Point& center, double shell_width);

  int add(const Point& x);
  int add(const Point& x, double s);  // s = d(center, x) when already known
  int size() const { return static_cast<int>(points_.size()); }
  const Point& point(int i) const { return points_[i]; }
  double radial(int i) const { return radial_[i]; }

  /// Indices of points with d(x, y) <= r, ascending.
  std::vector<int> within(const Point& x, double r) const;
  /// Same with the distances.
  std::vector<std::pair<int, double>> within_with_distance(const Point& x, double r) const;
  /// Candidate indices (no distance filter), for callers doing their own test.
  std::vector<int> candidates(const Point& x, double s, double r) const;

  /// Angular interval [lo, hi] (radians, absolute, lo may be < -pi or hi > pi)
  /// containing B(x, r) as seen from the center. False when it is the full circle.
  bool window(const Point& x, double s, double r, double& lo, double& hi) const;

 private:
  double angle_of(const Point& x) const;

  const ConvexBody* body_;
  Point center_;
  double width_;
  bool planar_;
  std::vector<Point> points_;
  std::vector<double> radial_;
  // per shell: angle -> index (2D) or plain index lists (other dimensions)
  std::vector<std::multimap<double, int>> shells_;
  std::vector<std::vector<int>> flat_;
};

struct Net {
  std::shared_ptr<const ConvexBody> body;
  std::vector<Point> points;
  std::vector<double> radial;  // d(domain_center, point)
  double epsilon = 0.0;
  Point domain_center;
  double domain_radius = 0.0;
  double covering_radius_est = 0.0;
  long long probes = 0;         // probes drawn by the certificate, restarts included
  int probe_insertions = 0;     // points added because a probe was uncovered
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(points.size()); }
  NetIndex index() const;
};

struct NetOptions {
  int k_probe = 10000;   // consecutive covered probes that end the certificate
  int candidates = 16;   // directions tried around each accepted point
  int sweep_candidates = 96;  // directions of the final sweep over all eps-spheres
};

/// Maximal eps-separated subset of B(x0, R), grown greedily from x0: every
/// accepted point proposes candidates on its own eps-sphere, accepted when at
/// distance >= eps from the net. A stream of probes then certifies covering;
/// an uncovered probe is inserted and the certificate starts over.
Net build_net(const ConvexBody& body, const Point& x0, double domain_radius, double epsilon, std::uint64_t seed,
              const NetOptions& opt = {});

/// Probe points of B(x0, R): Halton pairs mapped through (radius, direction).
std::vector<Point> ball_probes(const ConvexBody& body, const Point& x0, double radius, int count,
                               std::uint64_t seed);

/// log of the cardinality bound e^{n eps} 2^n ((e^{8r+2eps}-1)(e^{eps+2}-1)/(e^eps-1))^n
/// for an eps-separated set inside a ball of radius r.
double log_cardinality_bound(int n, double eps, double r);
/// Number of net points in B(x, r) against the bound.
bool cardinality_bound_check(const Net& net, const Point& x, double r);

void write_net_csv(std::ostream& out, const Net& net);

}  // namespace hilbert
