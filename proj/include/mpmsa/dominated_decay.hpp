#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpmsa/msa_classifier.hpp"

namespace mpmsa {

// f >= 0 on a finite domain V containing the ball B(u, L); sups M(f, W) are taken over W intersected with V.
struct DominationContext {
  const Graph* graph = nullptr;
  Configuration u;
  int L = 0;
  int ell = 0;
  double q = 0.5;
  VolumeIndex volume;
  std::vector<double> f;    // indexed by volume
  std::vector<char> xi;     // membership in Xi, indexed by volume
};

// Checks ell <= L, q in (0,1), f finite and nonnegative, u in V.
void validate(const DominationContext& ctx);

// M(f, B(center, r)).
double sup_over_ball(const DominationContext& ctx, const Configuration& center, int r);

struct RegularPartition {
  std::vector<char> in_scope;          // rho(u, x) <= L - ell
  std::vector<char> regular;           // f(x) <= q M(f, B(x, ell + 1)), in scope only
  std::vector<int> regular_points;
  std::vector<int> singular_points;
  std::vector<char> layer_regular;     // r = 0..L-ell; an empty layer is regular
};

RegularPartition regular_set(const DominationContext& ctx);

// R_f(x) = rbar(x) + ell, or nullopt for +infinity; x is an index into the volume.
std::optional<int> radius_function(const DominationContext& ctx, const RegularPartition& part, int x);

struct DominationStatus {
  bool dominated = false;
  std::string reason;   // empty when dominated
  int witness = -1;     // offending volume index
};

DominationStatus is_dominated(const DominationContext& ctx);

// B(u, b) \ B(u, a - 1).
struct Annulus {
  int a = 0;
  int b = 0;
};

// Smallest union of annuli covering Xi, one per run of consecutive layers meeting Xi.
std::vector<Annulus> covering_annuli(const DominationContext& ctx);

struct DominationBound {
  bool dominated = false;    // f is (ell, q, Xi)-dominated
  bool applicable = false;   // dominated, the annuli cover Xi and w <= L - ell
  std::string reason;        // empty when applicable
  int w = 0;                 // total annulus width
  double W = 0;              // (L + 1 - w) / (ell + 1)
  double M = 0;              // M(f, B(u, L + 1))
  double f_u = 0;
  double bound_floor = 0;    // q^{floor(W)} M
  double bound_W = 0;        // q^W M, reported only
  bool holds = false;        // f(u) <= q^{floor(W)} M
  bool holds_W = false;
};

DominationBound domination_bound(const DominationContext& ctx, const std::vector<Annulus>& annuli);

struct GfDominationReport {
  std::vector<std::string> violations;  // failed hypotheses, named
  bool applicable = false;
  double m_prime = 0;                   // m - 2 ell^{-delta} L^beta
  double q = 0;                         // exp(-m' ell^delta)
  bool log_condition = false;           // 2 L^beta > L^beta + ln(C L^{Nd}), reported only
  int boundary_points = 0;
  int dominated_count = 0;
  int applicable_count = 0;             // bounds asserted
  int holds_count = 0;
  bool dominated = false;               // every boundary y
  std::vector<DominationBound> bounds;  // one per boundary y
};

// f = |G_B(., y; E)| on B = B(u, L) for each y in the inner boundary.
GfDominationReport gf_domination_check(const Model& model, const Configuration& u, int L, double E, int ell,
                                       const std::vector<Configuration>& xi, double beta, double delta, double m,
                                       const GrowthCertificate& growth,
                                       int volume_budget = default_volume_budget);

}  // namespace mpmsa
