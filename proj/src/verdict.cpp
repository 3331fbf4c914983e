#include "hilbert/verdict.hpp"

#include "hilbert/graph.hpp"
#include "hilbert/markov.hpp"
#include "hilbert/net.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace hilbert {

namespace {

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

Indicator growth_indicator(const GrowthCurve& g) {
  Indicator ind{"growth", g.classification, g.fit_poly_exponent, 0};
  if (g.classification == "polynomial") ind.vote = 1;
  if (g.classification == "exponential") ind.vote = -1;
  return ind;
}

// Decay exponent alpha of ratio ~ R^-alpha from a log-log fit.
Indicator folner_indicator(const std::vector<FolnerPoint>& pts) {
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += std::log(p.radius);
    my += std::log(p.ratio);
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    sxx += (std::log(p.radius) - mx) * (std::log(p.radius) - mx);
    sxy += (std::log(p.radius) - mx) * (std::log(p.ratio) - my);
  }
  const double alpha = -sxy / sxx;
  Indicator ind{"folner", "", alpha, 0};
  if (alpha >= 0.5) {
    ind.vote = 1;
    ind.trend = "ratios decreasing to 0";
  } else if (alpha <= 0.2) {
    ind.vote = -1;
    ind.trend = "ratios bounded below";
  } else {
    ind.trend = "slow decay";
  }
  return ind;
}

Indicator spectral_indicator(const std::vector<SpectralEntry>& sp, double limit) {
  std::vector<double> rho;
  for (const auto& e : sp) rho.push_back(e.rho);
  Indicator ind{"spectral_radius", "", limit, 0};
  if (limit >= 0.98 && strictly_increasing(rho)) {
    ind.vote = 1;
    ind.trend = "rho_R increasing toward 1";
  } else if (limit <= 0.95) {
    ind.vote = -1;
    ind.trend = "rho_R bounded below 1";
  } else {
    ind.trend = "undecided";
  }
  return ind;
}

Indicator lambda_indicator(const RayleighReport& rep, const std::vector<double>& radii) {
  std::vector<double> v;
  for (double r : radii) v.push_back(rep.estimate_at(r));
  const double last = v.back();
  bool decreasing = true;
  for (std::size_t i = 1; i < v.size(); ++i) decreasing = decreasing && v[i] < v[i - 1];
  Indicator ind{"lambda1", "", last, 0};
  if (last <= 0.1 && decreasing) {
    ind.vote = 1;
    ind.trend = "upper bounds decreasing to 0";
  } else if (last >= 0.15) {
    ind.vote = -1;
    ind.trend = "upper bounds bounded away from 0";
  } else {
    ind.trend = "undecided";
  }
  return ind;
}

}  // namespace

VerdictReport amenability_verdict(const ConvexBody& body, const VerdictConfig& cfg) {
  require(body.dim() == 2, "amenability_verdict: 2D bodies only");
  require(cfg.spectral_radii.size() >= 2, "amenability_verdict: need at least two domain radii");
  require(cfg.folner_radii.size() >= 2 && cfg.lambda_radii.size() >= 2,
          "amenability_verdict: need at least two radii per indicator");
  require(strictly_increasing(cfg.spectral_radii) && strictly_increasing(cfg.folner_radii) &&
              strictly_increasing(cfg.lambda_radii),
          "amenability_verdict: radii must be strictly increasing");
  require(cfg.epsilon > 0.0, "amenability_verdict: epsilon must be positive");
  const Point x0 = body.interior_point();

  VerdictReport rep;
  rep.body = body.name();
  rep.seed = cfg.seed;
  rep.exploratory = body.kind() == BodyKind::sublevel;

  rep.growth = growth_curve(body, x0, cfg.growth_radii);
  for (double r : cfg.folner_radii) rep.folner.push_back(folner_ratio(body, x0, r));

  // One net at the largest radius; smaller domains are collar truncations of it.
  const Net net = build_net(body, x0, cfg.spectral_radii.back(), cfg.epsilon, cfg.seed);
  rep.net_size = net.size();
  const DiscretizationGraph g = build_graph(net, default_rho(net));
  rep.rho_graph = g.rho;
  for (double r : cfg.spectral_radii) {
    auto mask = collar_dirichlet(g, r);
    const MarkovSystem sys(g.graph, std::move(mask));
    require(sys.interior_size() >= 1, "amenability_verdict: radius too small for the net");
    const SpectralReport s = spectral_radius(sys);
    if (!s.converged) throw ConvergenceError("amenability_verdict: spectral radius did not converge");
    rep.spectral.push_back({r, sys.interior_size(), s.rho, s.residual, s.iterations, s.method, s.converged});
  }
  const auto& a = rep.spectral[rep.spectral.size() - 2];
  const auto& b = rep.spectral.back();
  rep.rho_limit = (b.rho * b.radius * b.radius - a.rho * a.radius * a.radius) /
                  (b.radius * b.radius - a.radius * a.radius);

  const auto eps = cfg.eps_grid.empty() ? default_eps_grid(body.dim()) : cfg.eps_grid;
  rep.lambda = lambda1_upper_estimate(body, x0, eps, cfg.lambda_radii);

  rep.indicators = {growth_indicator(rep.growth), folner_indicator(rep.folner),
                    spectral_indicator(rep.spectral, rep.rho_limit), lambda_indicator(rep.lambda, cfg.lambda_radii)};
  int pro = 0, contra = 0;
  for (const auto& ind : rep.indicators) {
    pro += ind.vote > 0;
    contra += ind.vote < 0;
  }
  if (pro >= 3 && contra == 0)
    rep.verdict = "amenable-evidence";
  else if (contra >= 3 && pro == 0)
    rep.verdict = "non-amenable-evidence";
  else
    rep.verdict = "inconclusive";
  return rep;
}

std::map<std::string, std::string> verdict_tables(const VerdictReport& rep) {
  std::map<std::string, std::string> out;
  const std::string head = fmt::format("# body={} seed={}\n", rep.body, rep.seed);

  std::string s = head + "radius,volume,error\n";
  for (std::size_t i = 0; i < rep.growth.radii.size(); ++i)
    s += fmt::format("{:.6f},{:.12e},{:.3e}\n", rep.growth.radii[i], rep.growth.volumes[i].value,
                     rep.growth.volumes[i].std_error);
  out["growth.csv"] = s;

  s = head + "radius,length,volume,ratio\n";
  for (const auto& p : rep.folner)
    s += fmt::format("{:.6f},{:.12e},{:.12e},{:.12e}\n", p.radius, p.length, p.volume, p.ratio);
  out["folner.csv"] = s;

  s = head + fmt::format("# net_size={} rho_graph={:.12e} rho_limit={:.12e}\n", rep.net_size, rep.rho_graph,
                         rep.rho_limit);
  s += "radius,interior,rho,residual,iterations,method\n";
  for (const auto& e : rep.spectral)
    s += fmt::format("{:.6f},{},{:.12e},{:.3e},{},{}\n", e.radius, e.interior, e.rho, e.residual, e.iterations,
                     e.method);
  out["spectral.csv"] = s;

  s = head + "eps,radius,value,error\n";
  for (const auto& e : rep.lambda.table)
    s += fmt::format("{:.6f},{:.6f},{:.12e},{:.3e}\n", e.eps, e.radius, e.value, e.error);
  out["lambda.csv"] = s;

  s = head + "indicator,statistic,vote,trend\n";
  for (const auto& ind : rep.indicators)
    s += fmt::format("{},{:.12e},{},{}\n", ind.name, ind.statistic, ind.vote, ind.trend);
  s += fmt::format("verdict,,,{}\n", rep.verdict);
  out["indicators.csv"] = s;
  return out;
}

}  // namespace hilbert
