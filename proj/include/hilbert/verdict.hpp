#pragma once

#include "hilbert/measure.hpp"
#include "hilbert/rayleigh.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hilbert {

struct VerdictConfig {
  std::vector<double> spectral_radii{4.0, 6.0, 8.0, 10.0};
  double epsilon = 0.5;
  std::uint64_t seed = 1;
  std::vector<double> growth_radii{5.0, 7.0, 9.0, 11.0, 13.0, 15.0};
  std::vector<double> folner_radii{2.0, 4.0, 6.0, 8.0, 10.0};
  std::vector<double> lambda_radii = default_lambda_radii();
  std::vector<double> eps_grid;  // empty: default_eps_grid
};

struct SpectralEntry {
  double radius;
  int interior;
  double rho;
  double residual;
  int iterations;
  std::string method;
  bool converged;
};

// One of the four trends with its vote: +1 amenable, -1 non-amenable, 0 neither.
struct Indicator {
  std::string name;
  std::string trend;
  double statistic;
  int vote;
};

struct VerdictReport {
  std::string body;
  std::uint64_t seed = 0;
  int net_size = 0;
  double rho_graph = 0.0;
  GrowthCurve growth;
  std::vector<FolnerPoint> folner;
  std::vector<SpectralEntry> spectral;
  double rho_limit = 0.0;  // extrapolated from the last two radii against 1/R^2
  RayleighReport lambda;
  std::vector<Indicator> indicators;
  std::string verdict;  // amenable-evidence, non-amenable-evidence, inconclusive
  bool exploratory = false;  // body is neither a polygon nor an ellipsoid
};

/// Runs the four indicators (volume growth, Folner ratios, Dirichlet spectral
/// radii on one net with collar truncations, Rayleigh upper bounds) about the
/// body's interior point. A verdict needs three agreeing votes and no
/// contrary one; it is evidence, never a proof.
VerdictReport amenability_verdict(const ConvexBody& body, const VerdictConfig& config);

/// CSV trend tables by file name (growth.csv, folner.csv, spectral.csv,
/// lambda.csv, indicators.csv), with fixed formatting.
std::map<std::string, std::string> verdict_tables(const VerdictReport& rep);

}  // namespace hilbert
