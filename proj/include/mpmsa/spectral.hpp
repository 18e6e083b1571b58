#pragma once

#include <utility>
#include <vector>

#include "mpmsa/hamiltonian.hpp"

namespace mpmsa {

inline constexpr double resolvent_guard = 1e-12;
inline constexpr double cluster_tolerance = 1e-10;

struct SpectralData {
  VectorXd eigenvalues;   // ascending
  MatrixXd eigenvectors;  // orthonormal columns; largest-|.| entry of each column is positive

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

SpectralData eigendecompose(const MatrixXd& H);
inline SpectralData eigendecompose(const HamiltonianMatrix& H) { return eigendecompose(H.matrix); }
VectorXd eigenvalues_only(const MatrixXd& H);

double spectral_distance(const VectorXd& eigenvalues, double E);
// Throws ResonanceError when E is within the guard of the spectrum.
void check_off_spectrum(const VectorXd& eigenvalues, double E, double guard = resolvent_guard);

// G(x, y; E) = <1_x, (H - E)^{-1} 1_y>; x, y are row indices of the volume.
double green(const SpectralData& S, double E, int x, int y);
// G(x, . ; E) as a vector over the volume.
VectorXd green_row(const SpectralData& S, double E, int x);
MatrixXd green_matrix(const SpectralData& S, double E);

// Index ranges [begin, end) of eigenvalues whose consecutive gaps are within tol.
std::vector<std::pair<int, int>> eigenvalue_clusters(const VectorXd& eigenvalues, double tol = cluster_tolerance);

struct EfcResult {
  double value = 0;
  std::vector<double> energies;       // one per eigenvalue cluster (cluster mean)
  std::vector<double> contributions;  // <1_y P_lambda 1_x> per cluster, signed
};

// sup over |f| <= 1 of |<1_y | f(H) | 1_x>| = sum over clusters of |<1_y P_lambda 1_x>|.
EfcResult efc(const SpectralData& S, int x, int y);

// Spectral data of H over a ball together with the geometry needed for boundary quantities.
struct BallSystem {
  MultiBall ball;
  VolumeIndex volume;
  HamiltonianMatrix H;
  SpectralData spectrum;
  std::vector<int> boundary;  // inner boundary, indices into volume
  int center_index = 0;
};

BallSystem make_ball_system(const Model& model, const MultiBall& ball, int volume_budget = default_volume_budget);

// C^{2N} L^{Nd}.
double boundary_prefactor(const GrowthCertificate& growth, int N, int L);

// F_u(E) = C^{2N} L^{Nd} max_{z in inner boundary} |G(u, z; E)|.
double boundary_functional(const BallSystem& sys, double E, const GrowthCertificate& growth);
// max_{z in inner boundary} |G(u, z; E)| without prefactor.
double boundary_green_max(const BallSystem& sys, double E);

struct GriResult {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

// Geometric resolvent inequality for x in W, y in V \ W (indices into V).
GriResult gri_check(const Graph& g, const VolumeIndex& V, const SpectralData& SV, const VolumeIndex& W,
                    const SpectralData& SW, int x, int y, double E);
GriResult gri_check(const Model& model, const VolumeIndex& V, const VolumeIndex& W, const Configuration& x,
                    const Configuration& y, double E);

struct LocalizationFit {
  int center = 0;       // index into the volume
  double mass = 0;      // slope of -log|psi| against rho_S
  double amplitude = 0; // exp(-intercept)
  double residual = 0;  // rms residual
  int points = 0;
  bool point_support = false;
};

std::vector<LocalizationFit> localization_profile(const Graph& g, const VolumeIndex& V, const SpectralData& S,
                                                  double floor = 1e-14);

}  // namespace mpmsa
