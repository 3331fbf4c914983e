#pragma once

#include "hilbert/graph.hpp"

#include <string>
#include <vector>

namespace hilbert {

// Graph Cheeger ratio |dF| / |F| for nonempty interior sets F with
// |F| <= |interior| / 2 (|F| = 1 when there is a single interior vertex),
// where dF is the exterior vertex boundary: vertices outside F adjacent to F.
// Dirichlet vertices count as boundary but never belong to F.

struct CheegerExact {
  long long num = 0;
  long long den = 1;
  double value = 0.0;
  std::vector<int> set;  // a minimizer
};

/// Enumeration over every admissible F; at most 22 interior vertices and
/// 64 vertices in the closed neighborhood of the interior.
CheegerExact cheeger_graph_exact(const Graph& g, const std::vector<char>& dirichlet);

struct CheegerSweep {
  double value = 0.0;
  std::vector<int> set;
  std::string vector_kind;  // perron or fiedler
  bool converged = true;
};

/// Level sets of the Perron vector of the killed walk (Dirichlet set present)
/// or of the Fiedler vector (none), scanned from both ends; an upper bound
/// for the exact value.
CheegerSweep cheeger_graph_sweep(const Graph& g, const std::vector<char>& dirichlet);

/// |dF| for a given set, as used by both routes.
int exterior_boundary_size(const Graph& g, const std::vector<int>& set);

struct InverseCheegerReport {
  int degree = 0;
  double cheeger = 0.0;
  std::string cheeger_method;  // exact or sweep (an upper bound only)
  double rho = 0.0;
  std::string rho_method;      // dirichlet or second_eigenvalue
  double bound = 0.0;          // 4 (1 - rho) / rho
  bool holds = false;
  std::string note;
};

/// Checks I >= 4 (1 - rho) / rho on a graph whose interior vertices all have
/// the same degree d >= 2. With a Dirichlet set, rho is the killed walk's
/// spectral radius; without one, the finite graph has rho = 1, so the second
/// eigenvalue of the walk stands in and the result is only indicative.
InverseCheegerReport inverse_cheeger_check(const Graph& g, const std::vector<char>& dirichlet);

}  // namespace hilbert
