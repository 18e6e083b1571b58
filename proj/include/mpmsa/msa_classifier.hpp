#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "mpmsa/spectral.hpp"

namespace mpmsa {

enum class Mode { subexp, exp };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct ParameterSet {
  Mode mode = Mode::subexp;
  int N_star = 2;
  double zeta = 0.5;
  double kappa = 0.03;
  double beta = 0.05;
  double delta = 0.35;
  double m_star = 1;
  double nu_star = 1;
  int K = 1;
  long long B = 48;
  double alpha = 1.5;
  double tau = 2;
  double P_star = 1;
  long long L0 = 1000000000;
  double d = 1;  // growth exponent entering P* > 4 N* d alpha
};

// Every violated inequality of the mode's parameter table, named; empty when valid.
std::vector<std::string> validate(const ParameterSet& p);
// Structural sanity independent of the asymptotic tables (positivity, ranges).
std::vector<std::string> validate_structure(const ParameterSet& p);

struct ScaleSchedule {
  Mode mode = Mode::subexp;
  std::vector<long long> L;
  bool truncated = false;

  // k with L_k == radius, or -1.
  int index_of(long long radius) const;
};

// L_k = L0 B^k (subexp) or L_{k+1} = floor(L_k^alpha) (exp), k = 0..kmax, stopping past max_radius.
ScaleSchedule scales(const ParameterSet& p, int kmax, long long max_radius = LLONG_MAX);

struct MassSchedule {
  std::vector<double> m;   // index N = 1..N*
  std::vector<double> nu;
  std::vector<double> P;

  double mass(int N) const { return m.at(N); }
};

// m_N = m*(1 + 4 L0^{beta-delta})^{N*-N+1}, nu_N = nu*(2B^kappa)^{N*-N+1}, P(N) = P*(2 alpha)^{N*-N+1}.
MassSchedule mass_schedule(const ParameterSet& p);
// gamma(m, L) = m (1 + L^{-1/8}).
double gamma_mass(double m, double L);

// Threshold on F_u(E): exp(-m L^delta) (subexp) or exp(-gamma(m,L) L) (exp).
double ns_threshold(const ParameterSet& p, double m, int L);
// 2 exp(-L^beta).
double resonance_threshold(double beta, int L);

struct MsaSetup {
  ParameterSet params;
  ScaleSchedule schedule;
  MassSchedule mass;
  GrowthCertificate growth{1, 3, 1};
  int volume_budget = default_volume_budget;
};

struct NsOutcome {
  bool determined = true;  // false when the resolvent guard tripped
  bool nonsingular = false;
  double value = 0;        // F_u(E)
  double threshold = 0;
};

NsOutcome nonsingular(const BallSystem& sys, double E, const MsaSetup& setup, double m);

struct CnrOutcome {
  bool cnr = true;
  int witness_radius = -1;  // first resonant concentric radius
};

// NR at every integer radius in [L_{k-1}, L_k]; requires k >= 1.
CnrOutcome completely_nonresonant(const Model& model, const Configuration& center, int k, double E,
                                  const MsaSetup& setup);

struct GoodOutcome {
  bool good = false;
  bool cnr = false;
  std::vector<Configuration> singular_centers;
  std::vector<Configuration> packing;  // largest pairwise-distant singular collection found
  bool exhaustive = true;
  long long distance_rule = 0;         // 8 N L_k or ceil(L_k^tau)
};

// Ball of radius L_{k+1}; singular sub-balls of radius L_k inside it.
GoodOutcome is_good(const Model& model, const Configuration& center, int k_plus_1, double E, const MsaSetup& setup);

struct WiOutcome {
  bool fnr = true;
  bool pns = true;
  std::string fnr_witness;
  std::string pns_witness;
};

WiOutcome classify_wi(const Model& model, const MultiBall& ball, const CanonicalSplit& split, double E,
                      const MsaSetup& setup);

struct BallClassification {
  bool resonant = false;
  double spectral_distance = 0;
  double resonance_threshold = 0;
  NsOutcome ns;
  std::optional<CnrOutcome> cnr;
  std::optional<bool> weakly_interactive;
  std::optional<WiOutcome> wi;
  std::optional<GoodOutcome> good;
};

struct ClassifyOptions {
  bool compound = true;  // CNR, FNR/PNS and good when the radius is a scale L_k with k >= 1
};

BallClassification classify(const Model& model, const MultiBall& ball, double E, const MsaSetup& setup,
                            const ClassifyOptions& opts = {});

// Largest subset with pairwise rho_S >= R: exhaustive up to 12 points, greedy beyond.
std::vector<int> distant_packing(const Graph& g, const std::vector<Configuration>& pts, long long R, bool& exhaustive);

}  // namespace mpmsa
