#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpmsa/evc_lab.hpp"
#include "mpmsa/msa_classifier.hpp"

namespace mpmsa {

struct EnergyPolicy {
  bool worst_over_grid = false;
  double E = 0;              // fixed energy
  std::vector<double> grid;  // worst-over-grid energies
};

struct ScaleRow {
  int k = 0;
  long long L = 0;
  bool skipped = false;  // ball over the volume budget
  McEstimate P;          // ball is S
  McEstimate Q;          // 4 x P(ball is R), estimate and CI scaled by 4 and clipped to [0, 4]
  McEstimate S;          // ball contains a WI singular ball of radius L_{k-1}; zero for N = 1 or k = 0
  double target = 0;     // exp(-nu_N L^kappa) or L^{-P(N)}
  bool meets_target = false;
  double worst_energy = 0;
};

struct ScaleReport {
  std::vector<ScaleRow> rows;
  std::string energy_policy;
  double confidence_z = 0;
};

ScaleReport scale_probabilities(const RandomModel& rm, const Configuration& center, const MsaSetup& setup,
                                const EnergyPolicy& policy, long long trials, std::uint64_t seed);

struct RecursionCheck {
  double first_term = 0;  // (1/2) C^{KN} L^{KNd} P_k^{K+1}
  double rhs = 0;
  double target = 0;      // exp(-nu_N L^kappa)
  bool satisfied = false; // measured P_{k+1} <= rhs
  bool meets_target = false;
};

RecursionCheck recursion_bound(double P_k, double S_next, double Q_next, double C, int K, int N, double d,
                               long long L_next, double measured_P_next, double nu_N, double kappa);

struct EnergyInterval {
  double lo = 0;
  double hi = 0;
};

struct EnergyIntervalCover {
  std::vector<EnergyInterval> intervals;
  double total_length = 0;

  int count() const { return static_cast<int>(intervals.size()); }
  bool covers(double E, double tol = 0) const;
};

// Cover of {E in [I_lo, I_hi] : F_u(E) >= a} built from monotonicity intervals of G(u, y; .).
EnergyIntervalCover sublevel_cover(const BallSystem& sys, const GrowthCertificate& growth, double a, double I_lo,
                                   double I_hi);

EnergyIntervalCover intersect(const EnergyIntervalCover& a, const EnergyIntervalCover& b);

struct SupMinResult {
  double sup = 0;
  double argmax = 0;
  bool exceeded = false;  // sup >= a
  int evaluations = 0;
};

// F_u(E), +inf inside the resolvent guard.
double boundary_functional_or_inf(const BallSystem& sys, double E, const GrowthCertificate& growth);

SupMinResult sup_min_functional(const BallSystem& x, const BallSystem& y, const GrowthCertificate& growth, double a,
                                const std::vector<double>& E_grid);

std::vector<double> linear_grid(double lo, double hi, int points);

struct BridgeParameters {
  double a = 0, b = 0, c = 0, q = 0;
  bool precondition = false;  // b <= min(a c^2 / K, c)
};

// a = e^{-nu L^kappa / 3}, b = e^{-2 nu L^kappa / 3}, c = e^{-nu L^kappa / 8}, q = e^{-nu L^kappa}.
BridgeParameters bridge_parameters(double nu, double L, double kappa, double K);

struct EfcPairRow {
  Configuration x, y;
  int rho_s = 0;
  double mean_efc = 0;
};

struct EfcDecayFit {
  double g = 0;
  std::vector<EfcPairRow> pairs;
  double M = 0;            // slope of -log(mean EFC) against rho_S^kappa
  double intercept = 0;
  double M_ci_low = 0;
  double M_ci_high = 0;
  std::vector<double> batch_M;
};

struct EfcDecayReport {
  std::vector<EfcDecayFit> fits;  // one per coupling in the grid
  double order_agreement = 0;     // fraction of batches whose fitted masses follow the |g| order
};

EfcDecayReport efc_decay_experiment(const Graph& graph, const VolumeIndex& volume, const PotentialDistribution& dist,
                                    const InteractionPotential& U, const std::vector<double>& g_grid,
                                    const std::vector<std::pair<Configuration, Configuration>>& pairs,
                                    double kappa, long long trials, std::uint64_t seed, int batches = 10);

// Two-sided 95% Student t quantile.
double student_t95(int dof);

}  // namespace mpmsa
