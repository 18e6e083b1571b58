#pragma once

#include <string>
#include <vector>

#include "mpmsa/disorder.hpp"
#include "mpmsa/graph.hpp"

namespace mpmsa {

inline constexpr int default_volume_budget = 4000;

struct Provenance {
  std::string graph;
  std::string volume;
  std::string distribution;
  std::string interaction;
  double g = 0;
  std::uint64_t seed = 0;
};

struct HamiltonianMatrix {
  MatrixXd matrix;
  Provenance provenance;

  int size() const { return static_cast<int>(matrix.rows()); }
};

// Everything needed to assemble H on any volume: graph, coupling, disorder and interaction.
struct Model {
  const Graph* graph = nullptr;
  double g = 0;
  const DisorderSample* sample = nullptr;
  InteractionPotential U;
};

// Disorder law plus coupling; realize() binds a drawn sample.
struct RandomModel {
  const Graph* graph = nullptr;
  PotentialDistribution dist;
  double g = 0;
  InteractionPotential U;

  DisorderSample draw(std::uint64_t seed) const { return sample_potential(dist, *graph, seed); }
  Model realize(const DisorderSample& sample) const { return Model{graph, g, &sample, U}; }
};

// Seed of trial i under a master seed.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) { return mix(master, trial); }

// -Delta_V = 1_V (-Delta) 1_V: full-graph degree on the diagonal, -1 on product edges inside V.
MatrixXd dirichlet_laplacian(const Graph& g, const VolumeIndex& V);

// g sum_j V(x_j) + sum_{i<j} U(d(x_i, x_j)).
double potential_energy(const Graph& graph, const Configuration& x, double g, const DisorderSample& sample,
                        const InteractionPotential& U);

HamiltonianMatrix assemble(const Model& model, const VolumeIndex& V, const std::string& volume_id = "",
                           int volume_budget = default_volume_budget);

std::string ball_id(const MultiBall& ball);

// A (x) I + I (x) B.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> kronecker_sum(const Eigen::MatrixBase<DerivedA>& A,
                                                const Eigen::MatrixBase<DerivedB>& B) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index m = A.rows(), n = B.rows();
  Matrix<Scalar> K = Matrix<Scalar>::Zero(m * n, m * n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = 0; k < m; ++k)
      if (A(i, k) != Scalar(0)) K.block(i * n, k * n, n, n).diagonal().array() += A(i, k);
  for (Eigen::Index i = 0; i < m; ++i) K.block(i * n, i * n, n, n) += B;
  return K;
}

struct DecoupledForm {
  MultiBall ball_prime;         // particles J
  MultiBall ball_dprime;        // particles Jc
  HamiltonianMatrix H_prime;
  HamiltonianMatrix H_dprime;
  VectorXd coupling;            // diagonal of U_{B',B''} in factorized order
  std::vector<int> permutation; // factorized index -> row of H over the ball
  double coupling_norm = 0;     // max |coupling|
  double coupling_bound = 0;    // C_U N^2 exp(-L^zeta)
};

// H' (x) I + I (x) H'' + U_{B',B''}, rows in factorized order (x_J, x_Jc).
MatrixXd recombine(const DecoupledForm& form);

DecoupledForm decouple(const Model& model, const MultiBall& ball, const CanonicalSplit& split);

// ||H|| <= 2 maxdeg N + N |g| sup|V| + N(N-1)/2 C_U.
double norm_bound(const Graph& g, int N, double coupling, double sup_potential, const InteractionPotential& U);

}  // namespace mpmsa
