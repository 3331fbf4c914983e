#include "hilbert/cheeger.hpp"

#include "hilbert/markov.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>

namespace hilbert {

namespace {

std::vector<char> normalized_mask(const Graph& g, const std::vector<char>& dirichlet) {
  std::vector<char> d = dirichlet;
  if (d.empty()) d.assign(g.size(), 0);
  require(static_cast<int>(d.size()) == g.size(), "cheeger: Dirichlet mask has the wrong size");
  return d;
}

std::vector<int> interior_of(const std::vector<char>& d) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(d.size()); ++v)
    if (!d[v]) out.push_back(v);
  return out;
}

bool interior_connected(const Graph& g, const std::vector<char>& d, const std::vector<int>& interior) {
  if (interior.size() <= 1) return true;
  std::vector<char> seen(g.size(), 0);
  std::deque<int> q{interior.front()};
  seen[interior.front()] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int w : g.neighbors(u)) {
      if (d[w] || seen[w]) continue;
      seen[w] = 1;
      ++count;
      q.push_back(w);
    }
  }
  return count == interior.size();
}

// Incremental exterior boundary while vertices join F one at a time.
class BoundaryCounter {
 public:
  explicit BoundaryCounter(const Graph& g) : g_(g), touch_(g.size(), 0), in_(g.size(), 0) {}
  void add(int v) {
    if (touch_[v] > 0) --boundary_;
    in_[v] = 1;
    for (int w : g_.neighbors(v)) {
      if (touch_[w]++ == 0 && !in_[w]) ++boundary_;
    }
  }
  int boundary() const { return boundary_; }

 private:
  const Graph& g_;
  std::vector<int> touch_;
  std::vector<char> in_;
  int boundary_ = 0;
};

}  // namespace

int exterior_boundary_size(const Graph& g, const std::vector<int>& set) {
  BoundaryCounter bc(g);
  std::vector<char> seen(g.size(), 0);
  for (int v : set) {
    require(v >= 0 && v < g.size(), "exterior_boundary_size: bad vertex");
    if (seen[v]) continue;
    seen[v] = 1;
    bc.add(v);
  }
  return bc.boundary();
}

CheegerExact cheeger_graph_exact(const Graph& g, const std::vector<char>& dirichlet) {
  const auto d = normalized_mask(g, dirichlet);
  const auto interior = interior_of(d);
  const int k = static_cast<int>(interior.size());
  require(k >= 1, "cheeger_graph_exact: no interior vertex");
  require(k <= 22, "cheeger_graph_exact: more than 22 interior vertices");
  // Bits 0..k-1 are the interior, the rest its Dirichlet neighbors.
  std::vector<int> bit(g.size(), -1);
  std::vector<int> relevant = interior;
  for (int i = 0; i < k; ++i) bit[interior[i]] = i;
  for (int v : interior)
    for (int w : g.neighbors(v))
      if (bit[w] < 0) {
        bit[w] = static_cast<int>(relevant.size());
        relevant.push_back(w);
      }
  require(relevant.size() <= 64, "cheeger_graph_exact: neighborhood of the interior exceeds 64 vertices");
  std::vector<std::uint64_t> nb(k, 0);
  for (int i = 0; i < k; ++i)
    for (int w : g.neighbors(interior[i])) nb[i] |= std::uint64_t{1} << bit[w];

  const int cap = std::max(1, k / 2);
  const std::uint32_t total = std::uint32_t{1} << k;
  std::vector<std::uint64_t> reach(total, 0);
  CheegerExact best;
  best.num = -1;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int low = std::countr_zero(mask);
    reach[mask] = reach[mask & (mask - 1)] | nb[low];
    const int size = std::popcount(mask);
    if (size > cap) continue;
    const long long bnd = std::popcount(reach[mask] & ~static_cast<std::uint64_t>(mask));
    // bnd / size < num / den, compared exactly
    if (best.num < 0 || bnd * best.den < best.num * size) {
      best.num = bnd;
      best.den = size;
      best_mask = mask;
    }
  }
  const long long gcd = std::gcd(best.num, best.den);
  if (gcd > 0) {
    best.num /= gcd;
    best.den /= gcd;
  }
  best.value = static_cast<double>(best.num) / static_cast<double>(best.den);
  for (int i = 0; i < k; ++i)
    if (best_mask >> i & 1u) best.set.push_back(interior[i]);
  return best;
}

CheegerSweep cheeger_graph_sweep(const Graph& g, const std::vector<char>& dirichlet) {
  const auto d = normalized_mask(g, dirichlet);
  const auto interior = interior_of(d);
  const int k = static_cast<int>(interior.size());
  require(k >= 1, "cheeger_graph_sweep: no interior vertex");
  require(interior_connected(g, d, interior), "cheeger_graph_sweep: interior is not connected");
  const bool has_dirichlet = k < g.size();
  CheegerSweep out;
  out.vector_kind = has_dirichlet ? "perron" : "fiedler";

  const MarkovSystem sys(g, d);
  std::vector<double> phi(k, 0.0);
  if (k == 1) {
    phi[0] = 1.0;
  } else if (k <= 3000) {
    const auto spec = dense_spectrum(sys);
    phi = spec.vectors[has_dirichlet ? k - 1 : k - 2];
  } else if (has_dirichlet) {
    SpectralOptions opt;
    opt.keep_vector = true;
    opt.tol = 1e-8;
    const auto rep = spectral_radius(sys, opt);
    phi = rep.vector;
    out.converged = rep.converged;
  } else {
    // Power iteration on the lazy operator, deflated against sqrt(deg).
    std::vector<double> top(k), y(k), sy;
    for (int i = 0; i < k; ++i) top[i] = std::sqrt(static_cast<double>(g.degree(interior[i])));
    double tn = 0.0;
    for (double t : top) tn += t * t;
    for (double& t : top) t /= std::sqrt(tn);
    for (int i = 0; i < k; ++i) y[i] = std::sin(1.0 + 0.37 * i);  // fixed, generic start
    out.converged = false;
    for (int it = 0; it < 100000; ++it) {
      double c = 0.0;
      for (int i = 0; i < k; ++i) c += top[i] * y[i];
      for (int i = 0; i < k; ++i) y[i] -= c * top[i];
      double n2 = 0.0;
      for (double v : y) n2 += v * v;
      for (double& v : y) v /= std::sqrt(n2);
      sys.apply_symmetric(y, sy);
      double l = 0.0, res = 0.0;
      for (int i = 0; i < k; ++i) {
        sy[i] = 0.5 * (y[i] + sy[i]);
        l += y[i] * sy[i];
      }
      for (int i = 0; i < k; ++i) res += (sy[i] - l * y[i]) * (sy[i] - l * y[i]);
      y = sy;
      if (std::sqrt(res) <= 1e-8) {
        out.converged = true;
        break;
      }
    }
    phi = y;
  }
  // Level sets of phi / sqrt(deg), the eigenfunction of the walk itself.
  std::vector<double> f(k);
  for (int i = 0; i < k; ++i) f[i] = phi[i] / std::sqrt(static_cast<double>(g.degree(interior[i])));
  if (has_dirichlet) {
    double sum = 0.0;
    for (double v : f) sum += v;
    if (sum < 0.0)
      for (double& v : f) v = -v;  // Perron vector: make it positive
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] > f[b]; });

  const int cap = std::max(1, k / 2);
  out.value = std::numeric_limits<double>::infinity();
  auto scan = [&](bool reverse) {
    BoundaryCounter bc(g);
    for (int j = 0; j < cap; ++j) {
      const int v = interior[order[reverse ? k - 1 - j : j]];
      bc.add(v);
      const double ratio = static_cast<double>(bc.boundary()) / (j + 1);
      if (ratio < out.value) {
        out.value = ratio;
        out.set.clear();
        for (int t = 0; t <= j; ++t) out.set.push_back(interior[order[reverse ? k - 1 - t : t]]);
      }
    }
  };
  scan(false);
  if (!has_dirichlet) scan(true);
  std::sort(out.set.begin(), out.set.end());
  return out;
}

InverseCheegerReport inverse_cheeger_check(const Graph& g, const std::vector<char>& dirichlet) {
  const auto d = normalized_mask(g, dirichlet);
  const auto interior = interior_of(d);
  require(!interior.empty(), "inverse_cheeger_check: no interior vertex");
  InverseCheegerReport rep;
  rep.degree = g.degree(interior.front());
  for (int v : interior)
    require(g.degree(v) == rep.degree, "inverse_cheeger_check: interior degrees differ (graph is not regular)");
  require(rep.degree >= 2, "inverse_cheeger_check: degree must be at least 2");

  if (interior.size() <= 22) {
    rep.cheeger = cheeger_graph_exact(g, d).value;
    rep.cheeger_method = "exact";
  } else {
    rep.cheeger = cheeger_graph_sweep(g, d).value;
    rep.cheeger_method = "sweep";
  }
  const MarkovSystem sys(g, d);
  if (interior.size() < static_cast<std::size_t>(g.size())) {
    rep.rho = spectral_radius(sys).rho;
    rep.rho_method = "dirichlet";
  } else {
    const auto spec = dense_spectrum(sys);
    const int k = static_cast<int>(spec.values.size());
    rep.rho = k >= 2 ? spec.values[k - 2] : 0.0;
    rep.rho_method = "second_eigenvalue";
    rep.note = "finite graph without Dirichlet set: rho is a proxy, the inequality is indicative only";
  }
  rep.bound = 4.0 * (1.0 - rep.rho) / rep.rho;
  rep.holds = rep.cheeger >= rep.bound;
  if (rep.cheeger_method == "sweep") {
    if (!rep.note.empty()) rep.note += "; ";
    rep.note += "Cheeger value from a sweep is an upper bound";
  }
  return rep;
}

}  // namespace hilbert
