#include "hilbert/markov.hpp"

#include "hilbert/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hilbert {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

MarkovSystem::MarkovSystem(const Graph& g, std::vector<char> dirichlet)
    : graph_(&g), dirichlet_(std::move(dirichlet)) {
  const int n = g.size();
  if (dirichlet_.empty()) dirichlet_.assign(n, 0);
  require(static_cast<int>(dirichlet_.size()) == n, "MarkovSystem: Dirichlet mask has the wrong size");
  local_.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (dirichlet_[v]) continue;
    require(g.degree(v) >= 1, "MarkovSystem: interior vertex without neighbors");
    local_[v] = static_cast<int>(interior_.size());
    interior_.push_back(v);
    inv_sqrt_deg_.push_back(1.0 / std::sqrt(static_cast<double>(g.degree(v))));
  }
}

void MarkovSystem::apply_symmetric(const std::vector<double>& x, std::vector<double>& y) const {
  y.resize(interior_.size());
  parallel::parallel_for(0, interior_.size(), [&](std::size_t i) {
    double s = 0.0;
    for (int w : graph_->neighbors(interior_[i])) {
      const int j = local_[w];
      if (j >= 0) s += inv_sqrt_deg_[j] * x[j];
    }
    y[i] = inv_sqrt_deg_[i] * s;
  });
}

void MarkovSystem::apply_walk(const std::vector<double>& x, std::vector<double>& y) const {
  y.resize(interior_.size());
  parallel::parallel_for(0, interior_.size(), [&](std::size_t i) {
    double s = 0.0;
    for (int w : graph_->neighbors(interior_[i])) {
      const int j = local_[w];
      if (j >= 0) s += x[j];
    }
    y[i] = s * inv_sqrt_deg_[i] * inv_sqrt_deg_[i];
  });
}

double MarkovSystem::symmetry_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < interior_.size(); ++i) {
    for (int w : graph_->neighbors(interior_[i])) {
      const int j = local_[w];
      if (j < 0) continue;
      const double back = graph_->adjacent(w, interior_[i]) ? inv_sqrt_deg_[j] * inv_sqrt_deg_[i] : 0.0;
      worst = std::max(worst, std::abs(inv_sqrt_deg_[i] * inv_sqrt_deg_[j] - back));
    }
  }
  return worst;
}

std::vector<char> collar_dirichlet(const DiscretizationGraph& g, double radius) {
  require(g.net != nullptr, "collar_dirichlet: graph without net");
  std::vector<char> out(g.graph.size(), 0);
  const double inner = radius - 3.0 * g.rho;
  for (int v = 0; v < g.graph.size(); ++v) out[v] = g.net->radial[v] > inner ? 1 : 0;
  return out;
}

namespace {

SpectralReport power_lazy(const MarkovSystem& sys, const SpectralOptions& opt) {
  const int n = sys.interior_size();
  std::vector<double> y(n), sy;
  for (int i = 0; i < n; ++i) y[i] = std::sqrt(static_cast<double>(sys.graph().degree(sys.interior()[i])));
  double nrm = norm(y);
  for (double& v : y) v /= nrm;
  SpectralReport rep;
  rep.method = "power_lazy";
  double lam = 0.0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    sys.apply_symmetric(y, sy);
    for (int i = 0; i < n; ++i) sy[i] = 0.5 * (y[i] + sy[i]);  // lazy step
    lam = dot(y, sy);
    double res = 0.0;
    for (int i = 0; i < n; ++i) res += (sy[i] - lam * y[i]) * (sy[i] - lam * y[i]);
    res = std::sqrt(res);
    rep.iterations = it;
    rep.residual = res;
    nrm = norm(sy);
    if (nrm == 0.0) break;
    for (int i = 0; i < n; ++i) y[i] = sy[i] / nrm;
    if (res <= opt.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.rho = std::max(0.0, 2.0 * lam - 1.0);
  if (opt.keep_vector) rep.vector = std::move(y);
  return rep;
}

// Plain Lanczos on S without reorthogonalization. Lost orthogonality only
// produces spurious copies of converged Ritz values, the top one is still
// right. The residual bound beta_m |e_m^T s| is divided by 2 for the lazy form.
SpectralReport lanczos(const MarkovSystem& sys, const SpectralOptions& opt) {
  const int n = sys.interior_size();
  std::vector<double> q(n), q_prev(n, 0.0), w;
  for (int i = 0; i < n; ++i) q[i] = std::sqrt(static_cast<double>(sys.graph().degree(sys.interior()[i])));
  const double n0 = norm(q);
  for (double& v : q) v /= n0;
  std::vector<double> alpha, beta;
  SpectralReport rep;
  rep.method = "lanczos";
  double b_prev = 0.0;
  const int max_steps = std::min(opt.max_iter, std::max(n, 2));
  for (int m = 1; m <= max_steps; ++m) {
    sys.apply_symmetric(q, w);
    const double a = dot(w, q);
    for (int i = 0; i < n; ++i) w[i] -= a * q[i] + b_prev * q_prev[i];
    const double b = norm(w);
    alpha.push_back(a);
    beta.push_back(b);
    rep.iterations = m;
    if (m % 10 == 0 || b == 0.0 || m == max_steps) {
      Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd e = Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1 > 0 ? m - 1 : 0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
      const double top = es.eigenvalues()(m - 1);
      const double res = 0.5 * b * std::abs(es.eigenvectors()(m - 1, m - 1));
      rep.rho = std::max(0.0, top);
      rep.residual = res;
      if (res <= opt.tol || b == 0.0) {
        rep.converged = true;
        break;
      }
    }
    q_prev.swap(q);
    for (int i = 0; i < n; ++i) q[i] = w[i] / b;
    b_prev = b;
  }
  return rep;
}

}  // namespace

SpectralReport spectral_radius(const MarkovSystem& sys, const SpectralOptions& opt) {
  require(sys.interior_size() >= 1, "spectral_radius: no interior vertex");
  require(opt.tol > 0.0 && opt.max_iter >= 1, "spectral_radius: bad options");
  if (sys.interior_size() > opt.lanczos_above && !opt.keep_vector) return lanczos(sys, opt);
  return power_lazy(sys, opt);
}

std::vector<double> return_probability_estimates(const MarkovSystem& sys, int steps, int x) {
  require(steps >= 10, "return_probability: need at least 10 steps");
  require(x >= 0 && x < sys.graph().size() && sys.local(x) >= 0, "return_probability: x must be interior");
  const int n = sys.interior_size();
  const int xi = sys.local(x);
  std::vector<double> v(n, 0.0), tv;
  v[xi] = 1.0;
  double log_scale = 0.0;
  std::vector<double> out;
  for (int step = 1; step <= steps; ++step) {
    sys.apply_walk(v, tv);
    v.swap(tv);
    double big = 0.0;
    for (double a : v) big = std::max(big, std::abs(a));
    if (big == 0.0) {
      while (static_cast<int>(out.size()) < steps / 2) out.push_back(0.0);
      return out;
    }
    for (double& a : v) a /= big;
    log_scale += std::log(big);
    if (step % 2 == 0) {
      const double p = v[xi];
      out.push_back(p > 0.0 ? std::exp((std::log(p) + log_scale) / step) : 0.0);
    }
  }
  return out;
}

double return_probability_rho(const MarkovSystem& sys, int steps, int x) {
  return return_probability_estimates(sys, steps, x).back();
}

DenseSpectrum dense_spectrum(const MarkovSystem& sys) {
  const int n = sys.interior_size();
  require(n >= 1 && n <= 6000, "dense_spectrum: system too large");
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int v = sys.interior()[i];
    for (int w : sys.graph().neighbors(v)) {
      const int j = sys.local(w);
      if (j >= 0)
        s(i, j) = 1.0 / std::sqrt(static_cast<double>(sys.graph().degree(v)) * sys.graph().degree(w));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  DenseSpectrum out;
  for (int k = 0; k < n; ++k) {
    out.values.push_back(es.eigenvalues()(k));
    out.vectors.emplace_back(es.eigenvectors().col(k).data(), es.eigenvectors().col(k).data() + n);
  }
  return out;
}

}  // namespace hilbert
