#include "hilbert/cli.hpp"

#include "hilbert/acceptance.hpp"
#include "hilbert/body_io.hpp"
#include "hilbert/graph.hpp"
#include "hilbert/horoball.hpp"
#include "hilbert/markov.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/net.hpp"
#include "hilbert/parallel.hpp"
#include "hilbert/rayleigh.hpp"
#include "hilbert/verdict.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

namespace hilbert {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Common {
  std::string body = "disk";
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::optional<double> tol;
  int threads = 0;
};

Point to_point(const std::vector<double>& v, int dim, const char* what) {
  require(static_cast<int>(v.size()) == dim, fmt::format("{}: expected {} coordinates", what, dim));
  Point p(dim);
  for (int i = 0; i < dim; ++i) p(i) = v[i];
  return p;
}

Point center_or_default(const ConvexBody& body, const std::vector<double>& v) {
  return v.empty() ? body.interior_point() : to_point(v, body.dim(), "center");
}

std::string write_file(const Common& c, const std::string& name, const std::string& content) {
  fs::create_directories(c.out_dir);
  const fs::path path = fs::path(c.out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot write " + path.string());
  f << content;
  return path.string();
}

std::string header(const ConvexBody& body, const Common& c) {
  return fmt::format("# body={} seed={}\n", body.name(), c.seed);
}

std::string polyline_csv(const ConvexBody& body, const Common& c, const std::vector<Point>& pts) {
  std::string s = header(body, c) + "x,y\n";
  for (const auto& p : pts) s += fmt::format("{:.10f},{:.10f}\n", p(0), p(1));
  return s;
}

std::vector<Point> outline(const ConvexBody& body) {
  if (body.kind() == BodyKind::polytope) return body.vertices();
  std::vector<Point> pts;
  const Point& x0 = body.interior_point();
  for (int i = 0; i < 720; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 720;
    const Vec u = make_vec({std::cos(a), std::sin(a)});
    pts.push_back(x0 + body.exit_param(x0, u) * u);
  }
  return pts;
}

// Presentation only: the body outline and the given closed curves.
std::string svg(const ConvexBody& body, const std::vector<std::vector<Point>>& curves) {
  const auto rim = outline(body);
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  for (const auto& p : rim) {
    lo_x = std::min(lo_x, p(0));
    hi_x = std::max(hi_x, p(0));
    lo_y = std::min(lo_y, p(1));
    hi_y = std::max(hi_y, p(1));
  }
  const double size = 600.0, margin = 20.0;
  const double scale = (size - 2 * margin) / std::max(hi_x - lo_x, hi_y - lo_y);
  auto path = [&](const std::vector<Point>& pts) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i)
      d += fmt::format("{}{:.2f},{:.2f} ", i == 0 ? "M" : "L", margin + (pts[i](0) - lo_x) * scale,
                       size - margin - (pts[i](1) - lo_y) * scale);
    return d + "Z";
  };
  std::string s = fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}">)", size) + "\n";
  s += fmt::format(R"(<path d="{}" fill="none" stroke="black" stroke-width="1.5"/>)", path(rim)) + "\n";
  for (const auto& c : curves)
    s += fmt::format(R"(<path d="{}" fill="none" stroke="steelblue" stroke-width="1"/>)", path(c)) + "\n";
  return s + "</svg>\n";
}

Net make_net(const ConvexBody& body, const Point& x0, double radius, double eps, const Common& c) {
  return build_net(body, x0, radius, eps, c.seed);
}

std::vector<double> default_or(const std::vector<double>& v, std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

json folner_summary(const std::vector<FolnerPoint>& pts) {
  double mx = 0, my = 0, mr = 0;
  for (const auto& p : pts) {
    mx += std::log(p.radius);
    my += std::log(p.ratio);
    mr += p.radius;
  }
  const double n = static_cast<double>(pts.size());
  mx /= n;
  my /= n;
  mr /= n;
  double sxx = 0, sxy = 0, srr = 0, sry = 0;
  for (const auto& p : pts) {
    sxx += (std::log(p.radius) - mx) * (std::log(p.radius) - mx);
    sxy += (std::log(p.radius) - mx) * (std::log(p.ratio) - my);
    srr += (p.radius - mr) * (p.radius - mr);
    sry += (p.radius - mr) * (std::log(p.ratio) - my);
  }
  const double exponent = pts.size() >= 2 ? -sxy / sxx : 0.0;
  const double rate = pts.size() >= 2 ? -sry / srr : 0.0;
  std::string cls = "undetermined";
  if (pts.size() >= 2) cls = exponent >= 0.5 ? "decaying" : (exponent <= 0.2 ? "bounded_below" : "undetermined");
  return {{"exponent", exponent}, {"rate", rate}, {"classification", cls}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"hilbertlab: numerical experiments on Hilbert geometries"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--body", c.body,
                 "body: JSON file, inline JSON, or triangle|square|hexagon|disk|superellipse|simplex3")
      ->capture_default_str();
  app.add_option("--seed", c.seed, "seed, echoed in every output")->capture_default_str();
  app.add_option("--out", c.out_dir, "output directory for CSV/SVG/DOT files")->capture_default_str();
  app.add_option("--tol", c.tol, "tolerance (spectrum: eigen-residual; folner: sphere length relative change)");
  app.add_option("--threads", c.threads, "worker threads (0: hardware)")->check(CLI::NonNegativeNumber);

  std::vector<double> p, q, center, base, radii, eps_grid;
  double radius = 0.0, eps = 0.5, rho = 0.0;
  int m = 720, pairs = 200, steps = 200;
  std::string method = "power";
  std::vector<int> only;

  auto* distance_cmd = app.add_subcommand("distance", "Hilbert distance of two points -> JSON {distance, error}");
  distance_cmd->add_option("--p", p, "first point x,y")->delimiter(',')->required();
  distance_cmd->add_option("--q", q, "second point x,y")->delimiter(',')->required();

  auto* ball_cmd = app.add_subcommand("ball", "sphere S(center, R) polyline -> ball.csv, ball.svg");
  ball_cmd->add_option("--center", center, "center (default: body's interior point)")->delimiter(',');
  ball_cmd->add_option("--radius", radius, "Hilbert radius")->required();
  ball_cmd->add_option("--m", m, "vertices")->capture_default_str();

  auto* horo_cmd = app.add_subcommand("horosphere", "horosphere polyline -> horosphere.csv, horosphere.svg");
  horo_cmd->add_option("--base", base, "boundary point (default: exit of the interior point downwards)")
      ->delimiter(',');
  horo_cmd->add_option("--anchor", center, "interior point on the horosphere (default: interior point)")
      ->delimiter(',');
  horo_cmd->add_option("--m", m, "directions")->capture_default_str();

  auto* net_cmd = app.add_subcommand("net", "eps-net of B(center, R) -> net.csv (x0,x1,radial)");
  auto* graph_cmd = app.add_subcommand("graph", "discretization graph -> graph.adj, graph.dot, JSON summary");
  for (auto* cmd : {net_cmd, graph_cmd}) {
    cmd->add_option("--center", center, "center (default: interior point)")->delimiter(',');
    cmd->add_option("--radius", radius, "domain radius")->required();
    cmd->add_option("--eps", eps, "separation")->capture_default_str();
  }
  graph_cmd->add_option("--rho", rho, "covering radius used for edges (default: max(cover, eps))");
  graph_cmd->add_option("--pairs", pairs, "pairs sampled for the quasi-isometry constants")->capture_default_str();

  auto* growth_cmd = app.add_subcommand("growth", "mu(B(center, R)) -> growth.csv, JSON fit summary");
  auto* folner_cmd = app.add_subcommand("folner", "length(S)/mu(B) -> folner.csv, JSON decay summary");
  for (auto* cmd : {growth_cmd, folner_cmd}) {
    cmd->add_option("--center", center, "center (default: interior point)")->delimiter(',');
    cmd->add_option("--radii", radii, "radii, increasing")->delimiter(',');
  }

  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "Dirichlet spectral radius on a net of B(center, R) -> JSON {rho, residual, iterations, R}");
  spectrum_cmd->add_option("--center", center, "center (default: interior point)")->delimiter(',');
  spectrum_cmd->add_option("--radius", radius, "domain radius R")->required();
  spectrum_cmd->add_option("--eps", eps, "net separation")->capture_default_str();
  spectrum_cmd->add_option("--method", method, "power | return_probability")
      ->check(CLI::IsMember({"power", "return_probability"}))
      ->capture_default_str();
  spectrum_cmd->add_option("--steps", steps, "walk steps for return_probability")->capture_default_str();

  auto* rayleigh_cmd = app.add_subcommand("rayleigh", "lambda_1 upper bounds -> lambda.csv, JSON best entry");
  rayleigh_cmd->add_option("--center", center, "center (default: interior point)")->delimiter(',');
  rayleigh_cmd->add_option("--eps-grid", eps_grid, "family parameters (default includes the tent)")
      ->delimiter(',');
  rayleigh_cmd->add_option("--radii", radii, "support radii (at most 18)")->delimiter(',');

  auto* verdict_cmd =
      app.add_subcommand("verdict", "four amenability indicators -> *.csv trend tables, verdict.json");
  verdict_cmd->add_option("--radii", radii, "domain radii for the spectral indicator")->delimiter(',');
  verdict_cmd->add_option("--eps", eps, "net separation")->capture_default_str();

  auto* selftest_cmd = app.add_subcommand("selftest", "acceptance suite, one line per criterion");
  selftest_cmd->add_option("--only", only, "criterion numbers")->delimiter(',');

  auto fail = [&](const char* kind, const std::string& msg, int code) {
    out << json{{"error", kind}, {"message", msg}, {"seed", c.seed}}.dump() << "\n";
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 1);
  }

  try {
    if (c.threads > 0) parallel::set_workers(c.threads);
    if (selftest_cmd->parsed()) {
      AcceptanceOptions opt;
      opt.seed = c.seed;
      opt.only = only;
      const auto results = run_acceptance(opt, out);
      int failed = 0;
      for (const auto& r : results) failed += !r.pass;
      out << json{{"criteria", results.size()}, {"failed", failed}, {"seed", c.seed}}.dump() << "\n";
      return failed == 0 ? 0 : 3;
    }

    const ConvexBody body = load_body(c.body);
    json res{{"body", body.name()}, {"seed", c.seed}};

    if (distance_cmd->parsed()) {
      const auto d = distance_with_error(body, to_point(p, body.dim(), "p"), to_point(q, body.dim(), "q"));
      res["distance"] = d.value;
      res["error"] = d.error;
    } else if (ball_cmd->parsed()) {
      require(body.dim() == 2, "ball: 2D bodies only");
      const Ball b{center_or_default(body, center), radius};
      const auto pts = ball_boundary_polyline(body, b, m);
      res["radius"] = radius;
      res["length"] = curve_length(body, pts, true);
      res["csv"] = write_file(c, "ball.csv", polyline_csv(body, c, pts));
      res["svg"] = write_file(c, "ball.svg", svg(body, {pts}));
    } else if (horo_cmd->parsed()) {
      require(body.dim() == 2, "horosphere: 2D bodies only");
      const Point anchor = center_or_default(body, center);
      Point b;
      if (base.empty()) {
        const Vec down = make_vec({0.0, -1.0});
        b = anchor + body.exit_param(anchor, down) * down;
      } else {
        b = to_point(base, 2, "base");
      }
      const auto pts = horosphere_polyline(body, {b, anchor}, m);
      res["base"] = {b(0), b(1)};
      res["anchor"] = {anchor(0), anchor(1)};
      res["csv"] = write_file(c, "horosphere.csv", polyline_csv(body, c, pts));
      res["svg"] = write_file(c, "horosphere.svg", svg(body, {pts}));
    } else if (net_cmd->parsed() || graph_cmd->parsed()) {
      const Net net = make_net(body, center_or_default(body, center), radius, eps, c);
      res["net_size"] = net.size();
      res["epsilon"] = eps;
      res["radius"] = radius;
      res["covering_radius_est"] = net.covering_radius_est;
      res["probes"] = net.probes;
      if (net_cmd->parsed()) {
        std::ostringstream s;
        s << header(body, c);
        write_net_csv(s, net);
        res["csv"] = write_file(c, "net.csv", s.str());
      } else {
        const DiscretizationGraph g = build_graph(net, rho > 0.0 ? rho : default_rho(net));
        const auto qi = quasi_isometry_report(g, pairs, c.seed);
        res["rho"] = g.rho;
        res["edges"] = g.graph.adj.size() / 2;
        res["quasi_isometry"] = {{"a_lower", qi.a_lower},
                                 {"a_upper", qi.a_upper},
                                 {"b", qi.b},
                                 {"pairs", qi.pairs},
                                 {"max_dc_over_rho_dg", qi.max_dc_over_rho_dg},
                                 {"sharper_bound_violations", qi.sharper_bound_violations}};
        std::ostringstream adj, dot;
        adj << header(body, c);
        write_adjacency(adj, g.graph);
        write_dot(dot, g);
        res["adjacency"] = write_file(c, "graph.adj", adj.str());
        res["dot"] = write_file(c, "graph.dot", dot.str());
      }
    } else if (growth_cmd->parsed()) {
      const auto curve = growth_curve(body, center_or_default(body, center),
                                      default_or(radii, {5.0, 7.0, 9.0, 11.0, 13.0, 15.0}));
      std::string s = header(body, c) + "R,value,std_error\n";
      for (std::size_t i = 0; i < curve.radii.size(); ++i)
        s += fmt::format("{:.6f},{:.12e},{:.3e}\n", curve.radii[i], curve.volumes[i].value,
                         curve.volumes[i].std_error);
      res["exponent"] = curve.fit_poly_exponent;
      res["rate"] = curve.fit_exp_rate;
      res["classification"] = curve.classification;
      res["csv"] = write_file(c, "growth.csv", s);
    } else if (folner_cmd->parsed()) {
      const Point x0 = center_or_default(body, center);
      std::vector<FolnerPoint> pts;
      for (double r : default_or(radii, {2.0, 4.0, 6.0, 8.0, 10.0})) {
        if (c.tol) {
          const double len = sphere_length(body, x0, r, *c.tol).value;
          const double vol = ball_measure(body, x0, r).value;
          pts.push_back({r, len, vol, len / vol});
        } else {
          pts.push_back(folner_ratio(body, x0, r));
        }
      }
      std::string s = header(body, c) + "R,length,volume,ratio\n";
      for (const auto& f : pts)
        s += fmt::format("{:.6f},{:.12e},{:.12e},{:.12e}\n", f.radius, f.length, f.volume, f.ratio);
      res.update(folner_summary(pts));
      res["csv"] = write_file(c, "folner.csv", s);
    } else if (spectrum_cmd->parsed()) {
      const Net net = make_net(body, center_or_default(body, center), radius, eps, c);
      const DiscretizationGraph g = build_graph(net, default_rho(net));
      const MarkovSystem sys(g.graph, collar_dirichlet(g, radius));
      require(sys.interior_size() >= 1, "spectrum: no interior vertex, increase the radius");
      res["R"] = radius;
      res["interior"] = sys.interior_size();
      res["net_size"] = net.size();
      if (method == "power") {
        SpectralOptions opt;
        if (c.tol) opt.tol = *c.tol;
        const auto rep = spectral_radius(sys, opt);
        if (!rep.converged)
          return fail("convergence", fmt::format("spectral radius residual {:.3e} above tolerance", rep.residual),
                      2);
        res["rho"] = rep.rho;
        res["residual"] = rep.residual;
        res["iterations"] = rep.iterations;
        res["method"] = rep.method;
      } else {
        // the walk starts at the interior vertex nearest the center
        int x = sys.interior().front();
        for (int v : sys.interior())
          if (net.radial[v] < net.radial[x]) x = v;
        res["rho"] = return_probability_rho(sys, steps, x);
        res["residual"] = nullptr;
        res["iterations"] = steps;
        res["method"] = "return_probability";
      }
    } else if (rayleigh_cmd->parsed()) {
      const auto rep = lambda1_upper_estimate(body, center_or_default(body, center),
                                              default_or(eps_grid, default_eps_grid(body.dim())),
                                              default_or(radii, default_lambda_radii()));
      std::string s = header(body, c) + "eps,R,value,error\n";
      for (const auto& e : rep.table)
        s += fmt::format("{:.6f},{:.6f},{:.12e},{:.3e}\n", e.eps, e.radius, e.value, e.error);
      res["lambda_estimate"] = rep.lambda_estimate;
      res["eps"] = rep.eps;
      res["R"] = rep.radius;
      res["quadrature_error"] = rep.quadrature_error;
      res["dual_norm_exact"] = rep.dual_norm_exact;
      res["csv"] = write_file(c, "lambda.csv", s);
    } else if (verdict_cmd->parsed()) {
      VerdictConfig cfg;
      cfg.seed = c.seed;
      cfg.epsilon = eps;
      if (!radii.empty()) cfg.spectral_radii = radii;
      const auto rep = amenability_verdict(body, cfg);
      json files = json::array();
      for (const auto& [name, content] : verdict_tables(rep)) files.push_back(write_file(c, name, content));
      json ind = json::array();
      for (const auto& i : rep.indicators)
        ind.push_back({{"name", i.name}, {"trend", i.trend}, {"statistic", i.statistic}, {"vote", i.vote}});
      json spectral = json::array();
      for (const auto& e : rep.spectral)
        spectral.push_back({{"R", e.radius}, {"rho", e.rho}, {"interior", e.interior}, {"method", e.method}});
      res["verdict"] = rep.verdict;
      res["exploratory"] = rep.exploratory;
      res["indicators"] = ind;
      res["spectral"] = spectral;
      res["rho_limit"] = rep.rho_limit;
      res["net_size"] = rep.net_size;
      res["lambda_estimate"] = rep.lambda.lambda_estimate;
      res["growth"] = {{"exponent", rep.growth.fit_poly_exponent},
                       {"rate", rep.growth.fit_exp_rate},
                       {"classification", rep.growth.classification}};
      res["note"] = "numerical evidence from finite truncations, not a proof";
      res["csv"] = files;
      res["json"] = write_file(c, "verdict.json", res.dump(2) + "\n");
    }
    out << res.dump() << "\n";
    return 0;
  } catch (const ValidationError& e) {
    return fail("validation", e.what(), 1);
  } catch (const ConvergenceError& e) {
    return fail("convergence", e.what(), 2);
  }
}

}  // namespace hilbert
