#include "hilbert/smoothing.hpp"

#include <cmath>

namespace hilbert {

Smoother::Smoother(const DiscretizationGraph& g, std::vector<double> values)
    : net_(g.net), rho_(g.rho), values_(std::move(values)), index_(g.net->index()) {
  require(static_cast<int>(values_.size()) == net_->size(), "Smoother: one value per net point expected");
}

double Smoother::operator()(const Point& x) const {
  double num = 0.0, den = 0.0;
  for (const auto& [i, d] : index_.within_with_distance(x, 2.0 * rho_)) {
    const double b = 1.0 - d / (2.0 * rho_);
    if (b <= 0.0) continue;
    num += b * b * values_[i];
    den += b * b;
  }
  require(den > 0.0, "Smoother: point not covered by any bump");
  return num / den;
}

double dirichlet_form_ratio(const Graph& g, const std::vector<double>& f) {
  require(static_cast<int>(f.size()) == g.size(), "dirichlet_form_ratio: one value per vertex expected");
  double energy = 0.0, mass = 0.0;
  for (int v = 0; v < g.size(); ++v) {
    double around = 0.0;
    for (int w : g.neighbors(v)) around += f[w];
    mass += g.degree(v) * f[v] * f[v];
    energy += g.degree(v) * f[v] * f[v] - f[v] * around;
  }
  require(mass > 0.0, "dirichlet_form_ratio: f vanishes");
  return energy / mass;
}

}  // namespace hilbert
