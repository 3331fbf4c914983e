#include "hilbert/sampling.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>

namespace hilbert {

double unit_ball_volume_euclidean(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area_euclidean(int n) { return n * unit_ball_volume_euclidean(n); }

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

double radical_inverse(std::uint64_t index, int base) {
  const double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

std::vector<double> halton(std::uint64_t index, int dim) {
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  require(dim >= 1 && dim <= 12, "halton: dimension out of range");
  std::vector<double> out(dim);
  for (int d = 0; d < dim; ++d) out[d] = radical_inverse(index, kPrimes[d]);
  return out;
}

std::vector<Vec> sphere_directions(int n, int count) {
  require(n >= 2 && count >= 1, "sphere_directions: bad arguments");
  std::vector<Vec> dirs;
  dirs.reserve(count);
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * (i + 0.5) / count;
      dirs.push_back(make_vec({std::cos(a), std::sin(a)}));
    }
    return dirs;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * i;
      dirs.push_back(make_vec({r * std::cos(a), r * std::sin(a), z}));
    }
    return dirs;
  }
  const boost::math::normal_distribution<double> normal;
  for (int i = 0; i < count; ++i) {
    const auto h = halton(static_cast<std::uint64_t>(i) + 1, n);
    Vec v(n);
    for (int d = 0; d < n; ++d) v(d) = boost::math::quantile(normal, h[d]);
    dirs.push_back(v / v.norm());
  }
  return dirs;
}

namespace {

template <int Order>
GaussRule expand_rule() {
  using G = boost::math::quadrature::gauss<double, Order>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  GaussRule rule;
  // Boost stores the non-negative half; odd orders carry the zero node first.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w[i]);
      continue;
    }
    rule.nodes.push_back(-a[i]);
    rule.weights.push_back(w[i]);
    rule.nodes.push_back(a[i]);
    rule.weights.push_back(w[i]);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static const GaussRule r4 = expand_rule<4>();
  static const GaussRule r8 = expand_rule<8>();
  static const GaussRule r16 = expand_rule<16>();
  switch (order) {
    case 4:
      return r4;
    case 8:
      return r8;
    case 16:
      return r16;
    default:
      throw ValidationError("gauss_legendre: supported orders are 4, 8, 16");
  }
}

}  // namespace hilbert
