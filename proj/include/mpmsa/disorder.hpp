#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpmsa/graph.hpp"

namespace mpmsa {

// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);
// Counter-based stream: mix(seed, i) = splitmix64(splitmix64(seed) + (i + 1) * 0x9E3779B97F4A7C15).
std::uint64_t mix(std::uint64_t seed, std::uint64_t index);
// Top 53 bits mapped to [0, 1).
double to_unit(std::uint64_t bits);

struct PotentialDistribution {
  enum class Kind { uniform, tgauss };

  Kind kind = Kind::uniform;
  double a = 0, b = 1;
  double mu = 0, sigma = 1;
  double p_lower = 1, p_upper = 1;
  double R = 0;  // sup |p'| on the support

  std::string id() const;
  bool degenerate() const { return a == b; }  // point mass, outside condition (V)
  double density(double t) const;
  double cdf(double t) const;
  double quantile(double u) const;
  double sup_abs() const;
};

PotentialDistribution uniform_distribution(double a, double b);
// Gaussian density clipped to [a, b] and renormalized.
PotentialDistribution tgauss_distribution(double mu, double sigma, double a, double b);
// "uniform:0:1", "tgauss:0:1:-2:2".
PotentialDistribution parse_distribution(const std::string& spec);

struct DisorderSample {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string distribution;

  double operator()(Vertex v) const { return values[v]; }
};

DisorderSample sample_potential(const PotentialDistribution& dist, const Graph& g, std::uint64_t seed);
DisorderSample constant_sample(const Graph& g, double c);

struct InteractionPotential {
  double C_U = 0;
  double zeta = 1;
  int truncation_radius = -1;  // -1 means no truncation

  std::string id() const;
};

// U(r) = C_U exp(-r^zeta) for r >= 1, U(0) = C_U, zero beyond the truncation radius.
double interaction_value(const InteractionPotential& U, int r);
// "u:C=1:zeta=0.5:rcut=inf" or "none".
InteractionPotential parse_interaction(const std::string& spec);

struct MeanFluctuationSplit {
  std::vector<Vertex> Q;
  double xi = 0;
  std::vector<double> eta;
};

MeanFluctuationSplit mean_fluctuation_split(const DisorderSample& sample, const std::vector<Vertex>& Q);

}  // namespace mpmsa
