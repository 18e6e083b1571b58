#include "mpmsa/disorder.hpp"

#include <algorithm>
#include <cmath>

#include "mpmsa/text.hpp"

namespace mpmsa {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI); }
double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

std::string PotentialDistribution::id() const {
  if (kind == Kind::uniform) return "uniform:" + format_shortest(a) + ":" + format_shortest(b);
  return "tgauss:" + format_shortest(mu) + ":" + format_shortest(sigma) + ":" + format_shortest(a) + ":" +
         format_shortest(b);
}

double PotentialDistribution::density(double t) const {
  if (t < a || t > b || degenerate()) return 0;
  if (kind == Kind::uniform) return 1.0 / (b - a);
  double Z = Phi((b - mu) / sigma) - Phi((a - mu) / sigma);
  return phi((t - mu) / sigma) / (sigma * Z);
}

double PotentialDistribution::cdf(double t) const {
  if (t < a) return 0;
  if (t >= b) return 1;
  if (kind == Kind::uniform) return (t - a) / (b - a);
  double lo = Phi((a - mu) / sigma), hi = Phi((b - mu) / sigma);
  return (Phi((t - mu) / sigma) - lo) / (hi - lo);
}

double PotentialDistribution::quantile(double u) const {
  if (degenerate()) return a;
  if (kind == Kind::uniform) return a + (b - a) * u;
  double lo = a, hi = b;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double PotentialDistribution::sup_abs() const { return std::max(std::fabs(a), std::fabs(b)); }

PotentialDistribution uniform_distribution(double a, double b) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) throw ConfigError("uniform needs finite a <= b");
  PotentialDistribution d;
  d.kind = PotentialDistribution::Kind::uniform;
  d.a = a;
  d.b = b;
  d.p_lower = d.p_upper = a < b ? 1.0 / (b - a) : INFINITY;
  d.R = 0;
  return d;
}

PotentialDistribution tgauss_distribution(double mu, double sigma, double a, double b) {
  if (!(a < b) || !(sigma > 0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(mu))
    throw ConfigError("tgauss needs sigma > 0 and finite a < b");
  PotentialDistribution d;
  d.kind = PotentialDistribution::Kind::tgauss;
  d.mu = mu;
  d.sigma = sigma;
  d.a = a;
  d.b = b;
  d.p_lower = std::min(d.density(a), d.density(b));
  d.p_upper = d.density(std::clamp(mu, a, b));
  // |p'(t)| = |z| phi(z) / (sigma^2 Z) peaks at |z| = 1 when that point lies in the support.
  double Z = Phi((b - mu) / sigma) - Phi((a - mu) / sigma);
  auto slope = [&](double t) {
    double z = (t - mu) / sigma;
    return std::fabs(z) * phi(z) / (sigma * sigma * Z);
  };
  d.R = std::max(slope(a), slope(b));
  for (double t : {mu - sigma, mu + sigma})
    if (t >= a && t <= b) d.R = std::max(d.R, slope(t));
  return d;
}

PotentialDistribution parse_distribution(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts[0] == "uniform" && parts.size() == 3)
    return uniform_distribution(parse_double(parts[1], spec), parse_double(parts[2], spec));
  if (parts[0] == "tgauss" && parts.size() == 5)
    return tgauss_distribution(parse_double(parts[1], spec), parse_double(parts[2], spec),
                               parse_double(parts[3], spec), parse_double(parts[4], spec));
  throw ConfigError("malformed distribution spec '" + spec + "'");
}

DisorderSample sample_potential(const PotentialDistribution& dist, const Graph& g, std::uint64_t seed) {
  DisorderSample s;
  s.seed = seed;
  s.distribution = dist.id();
  s.values.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) s.values[v] = dist.quantile(to_unit(mix(seed, static_cast<std::uint64_t>(v))));
  return s;
}

DisorderSample constant_sample(const Graph& g, double c) {
  DisorderSample s;
  s.distribution = "const:" + format_shortest(c);
  s.values.assign(g.size(), c);
  return s;
}

std::string InteractionPotential::id() const {
  if (C_U == 0) return "none";
  return "u:C=" + format_shortest(C_U) + ":zeta=" + format_shortest(zeta) +
         ":rcut=" + (truncation_radius < 0 ? std::string("inf") : std::to_string(truncation_radius));
}

double interaction_value(const InteractionPotential& U, int r) {
  require(r >= 0, "interaction_value: negative distance");
  if (U.truncation_radius >= 0 && r > U.truncation_radius) return 0;
  if (r == 0) return U.C_U;
  return U.C_U * std::exp(-std::pow(static_cast<double>(r), U.zeta));
}

InteractionPotential parse_interaction(const std::string& spec) {
  InteractionPotential U;
  if (spec == "none") return U;
  auto parts = split(spec, ':');
  if (parts[0] != "u") throw ConfigError("malformed interaction spec '" + spec + "'");
  bool haveC = false, haveZ = false;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw ConfigError("malformed interaction spec '" + spec + "'");
    std::string k = parts[i].substr(0, eq), v = parts[i].substr(eq + 1);
    if (k == "C") {
      U.C_U = parse_double(v, spec);
      haveC = true;
    } else if (k == "zeta") {
      U.zeta = parse_double(v, spec);
      haveZ = true;
    } else if (k == "rcut") {
      U.truncation_radius = v == "inf" ? -1 : static_cast<int>(parse_integer(v, spec));
    } else {
      throw ConfigError("unknown interaction field '" + k + "'");
    }
  }
  if (!haveC || !haveZ || U.C_U < 0 || !(U.zeta > 0) || !std::isfinite(U.C_U))
    throw ConfigError("interaction spec needs C >= 0 and zeta > 0: '" + spec + "'");
  return U;
}

MeanFluctuationSplit mean_fluctuation_split(const DisorderSample& sample, const std::vector<Vertex>& Q) {
  require(!Q.empty(), "mean_fluctuation_split: empty Q");
  MeanFluctuationSplit s;
  s.Q = Q;
  double sum = 0;
  for (Vertex v : Q) sum += sample(v);
  s.xi = sum / static_cast<double>(Q.size());
  for (Vertex v : Q) s.eta.push_back(sample(v) - s.xi);
  return s;
}

}  // namespace mpmsa
