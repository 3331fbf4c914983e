#pragma once

#include "hilbert/graph.hpp"

#include <string>
#include <vector>

namespace hilbert {

// Simple random walk on a graph, killed on entering the Dirichlet set.
// In the symmetric form S = D^{1/2} T D^{-1/2} restricted to interior
// vertices, S_xy = 1/sqrt(deg x deg y); degrees count every neighbor,
// Dirichlet ones included.
class MarkovSystem {
 public:
  MarkovSystem(const Graph& g, std::vector<char> dirichlet);

  const Graph& graph() const { return *graph_; }
  const std::vector<char>& dirichlet() const { return dirichlet_; }
  const std::vector<int>& interior() const { return interior_; }
  int interior_size() const { return static_cast<int>(interior_.size()); }
  /// Position of v among the interior vertices, -1 for Dirichlet ones.
  int local(int v) const { return local_[v]; }

  /// y = S x on interior coordinates.
  void apply_symmetric(const std::vector<double>& x, std::vector<double>& y) const;
  /// y = T x on interior coordinates (the walk itself, not symmetrized).
  void apply_walk(const std::vector<double>& x, std::vector<double>& y) const;
  /// Largest deviation |S_xy - S_yx| (zero unless the graph is corrupt).
  double symmetry_residual() const;

 private:
  const Graph* graph_;
  std::vector<char> dirichlet_;
  std::vector<int> interior_;
  std::vector<int> local_;
  std::vector<double> inv_sqrt_deg_;  // per interior vertex
};

/// Dirichlet set of a discretization graph for truncation radius R: the
/// collar of net points farther than R - 3 rho from the center, whose
/// neighborhoods are cut by the domain.
std::vector<char> collar_dirichlet(const DiscretizationGraph& g, double radius);

struct SpectralReport {
  double rho = 0.0;
  int iterations = 0;
  double residual = 0.0;  // eigen-residual of the lazy operator
  std::string method;     // power_lazy, lanczos, return_probability
  bool converged = false;
  std::vector<double> vector;  // top eigenvector of S (power route only)
};

struct SpectralOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  int lanczos_above = 20000;  // interior size from which Lanczos replaces power iteration
  bool keep_vector = false;
};

/// rho = 2 lambda - 1 where lambda is the top eigenvalue of the lazy
/// operator (I + S)/2, found by power iteration from sqrt(deg).
SpectralReport spectral_radius(const MarkovSystem& sys, const SpectralOptions& opt = {});

/// (p^(2k)(x, x))^(1/2k) for k = 1 .. steps/2.
std::vector<double> return_probability_estimates(const MarkovSystem& sys, int steps, int x);
/// The estimate at the largest k.
double return_probability_rho(const MarkovSystem& sys, int steps, int x);

/// All eigenpairs of S for small systems (ascending eigenvalues).
struct DenseSpectrum {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // interior coordinates
};
DenseSpectrum dense_spectrum(const MarkovSystem& sys);

}  // namespace hilbert
