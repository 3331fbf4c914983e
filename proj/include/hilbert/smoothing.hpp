#pragma once

#include "hilbert/graph.hpp"

#include <vector>

namespace hilbert {

// Smoothing of vertex functions of a discretization graph:
// (Sf)(x) = sum_xi phi_xi(x) f(xi), phi_xi = b_xi / sum_eta b_eta with the
// bumps b_xi(x) = (1 - d(x, xi) / (2 rho))_+^2, supported in B(xi, 2 rho).
class Smoother {
 public:
  Smoother(const DiscretizationGraph& g, std::vector<double> values);

  /// Throws ValidationError where no bump is positive (outside the net's reach).
  double operator()(const Point& x) const;
  double rho() const { return rho_; }

 private:
  const Net* net_;
  double rho_;
  std::vector<double> values_;
  NetIndex index_;
};

/// <(1 - T) f, f>_deg / <f, f>_deg for the simple random walk.
double dirichlet_form_ratio(const Graph& g, const std::vector<double>& f);

}  // namespace hilbert
