#include "mpmsa/hamiltonian.hpp"

#include <cmath>

#include "mpmsa/text.hpp"

namespace mpmsa {

MatrixXd dirichlet_laplacian(const Graph& g, const VolumeIndex& V) {
  const int n = V.size();
  MatrixXd L = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    L(i, i) = product_degree(g, V[i]);
    for_each_neighbor(g, V[i], [&](const Configuration& y) {
      int k = V.find(y);
      if (k >= 0) L(i, k) = -1.0;
    });
  }
  return L;
}

double potential_energy(const Graph& graph, const Configuration& x, double g, const DisorderSample& sample,
                        const InteractionPotential& U) {
  double v = 0;
  for (Vertex p : x) v += sample(p);
  double u = 0;
  if (U.C_U != 0)
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) u += interaction_value(U, graph.dist(x[i], x[j]));
  return g * v + u;
}

std::string ball_id(const MultiBall& ball) {
  std::string s = "ball(";
  for (std::size_t j = 0; j < ball.center.size(); ++j) s += (j ? "," : "") + std::to_string(ball.center[j]);
  return s + ";" + std::to_string(ball.radius) + ")";
}

HamiltonianMatrix assemble(const Model& model, const VolumeIndex& V, const std::string& volume_id,
                           int volume_budget) {
  require(model.graph && model.sample, "assemble: model needs a graph and a disorder sample");
  if (V.size() > volume_budget)
    throw BudgetExceeded("volume has " + std::to_string(V.size()) + " configurations, budget is " +
                         std::to_string(volume_budget));
  const Graph& g = *model.graph;
  require(static_cast<int>(model.sample->values.size()) == g.size(), "assemble: sample does not match graph");
  HamiltonianMatrix H;
  H.matrix = dirichlet_laplacian(g, V);
  for (int i = 0; i < V.size(); ++i) H.matrix(i, i) += potential_energy(g, V[i], model.g, *model.sample, model.U);
  if (!H.matrix.allFinite()) throw DataError("assembled Hamiltonian has non-finite entries");
  H.provenance = {g.id(), volume_id.empty() ? "volume#" + std::to_string(V.size()) : volume_id,
                  model.sample->distribution, model.U.id(), model.g, model.sample->seed};
  return H;
}

namespace {

Configuration pick(const Configuration& x, const std::vector<int>& idx) {
  Configuration out;
  for (int j : idx) out.push_back(x[j]);
  return out;
}

}  // namespace

DecoupledForm decouple(const Model& model, const MultiBall& ball, const CanonicalSplit& split) {
  const Graph& g = *model.graph;
  require(split.distance > ball.radius, "decouple: split does not separate the ball (SI ball?)");
  require(!split.J.empty() && !split.Jc.empty(), "decouple: split must be proper");
  DecoupledForm f;
  f.ball_prime = make_ball(g, pick(ball.center, split.J), ball.radius);
  f.ball_dprime = make_ball(g, pick(ball.center, split.Jc), ball.radius);
  VolumeIndex Vp = ball_volume(g, f.ball_prime), Vd = ball_volume(g, f.ball_dprime), V = ball_volume(g, ball);
  f.H_prime = assemble(model, Vp, ball_id(f.ball_prime));
  f.H_dprime = assemble(model, Vd, ball_id(f.ball_dprime));

  const int np = Vp.size(), nd = Vd.size();
  f.coupling.resize(static_cast<Eigen::Index>(np) * nd);
  f.permutation.resize(static_cast<std::size_t>(np) * nd);
  Configuration x(ball.particles());
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nd; ++b) {
      for (std::size_t k = 0; k < split.J.size(); ++k) x[split.J[k]] = Vp[a][k];
      for (std::size_t k = 0; k < split.Jc.size(); ++k) x[split.Jc[k]] = Vd[b][k];
      double u = 0;
      for (int i : split.J)
        for (int j : split.Jc) u += interaction_value(model.U, g.dist(x[i], x[j]));
      const int idx = a * nd + b;
      f.coupling(idx) = u;
      f.permutation[idx] = V.find(x);
    }
  f.coupling_norm = f.coupling.cwiseAbs().maxCoeff();
  const double N = ball.particles();
  f.coupling_bound = model.U.C_U * N * N * std::exp(-std::pow(static_cast<double>(ball.radius), model.U.zeta));
  return f;
}

MatrixXd recombine(const DecoupledForm& form) {
  MatrixXd H = kronecker_sum(form.H_prime.matrix, form.H_dprime.matrix);
  H.diagonal() += form.coupling;
  return H;
}

double norm_bound(const Graph& g, int N, double coupling, double sup_potential, const InteractionPotential& U) {
  return 2.0 * g.max_degree() * N + N * std::fabs(coupling) * sup_potential + 0.5 * N * (N - 1) * U.C_U;
}

}  // namespace mpmsa
