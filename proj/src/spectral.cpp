#include "mpmsa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpmsa {

SpectralData eigendecompose(const MatrixXd& H) {
  if (!H.allFinite()) throw DataError("eigendecompose: non-finite matrix entries");
  require(H.rows() == H.cols() && H.rows() > 0, "eigendecompose: square nonempty matrix required");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw DataError("eigendecompose: solver did not converge");
  SpectralData S{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index j = 0; j < S.eigenvectors.cols(); ++j) {
    Eigen::Index k = 0;
    S.eigenvectors.col(j).cwiseAbs().maxCoeff(&k);
    if (S.eigenvectors(k, j) < 0) S.eigenvectors.col(j) *= -1.0;
  }
  return S;
}

VectorXd eigenvalues_only(const MatrixXd& H) {
  if (!H.allFinite()) throw DataError("eigenvalues_only: non-finite matrix entries");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DataError("eigenvalues_only: solver did not converge");
  return es.eigenvalues();
}

double spectral_distance(const VectorXd& eigenvalues, double E) {
  return (eigenvalues.array() - E).abs().minCoeff();
}

void check_off_spectrum(const VectorXd& eigenvalues, double E, double guard) {
  double d = spectral_distance(eigenvalues, E);
  if (!(d > guard))
    throw ResonanceError("energy within " + std::to_string(d) + " of the spectrum", d);
}

double green(const SpectralData& S, double E, int x, int y) {
  check_off_spectrum(S.eigenvalues, E);
  const VectorXd inv = (S.eigenvalues.array() - E).inverse().matrix();
  return (S.eigenvectors.row(x).transpose().cwiseProduct(S.eigenvectors.row(y).transpose())).dot(inv);
}

VectorXd green_row(const SpectralData& S, double E, int x) {
  check_off_spectrum(S.eigenvalues, E);
  const VectorXd w = S.eigenvectors.row(x).transpose().cwiseQuotient((S.eigenvalues.array() - E).matrix());
  return S.eigenvectors * w;
}

MatrixXd green_matrix(const SpectralData& S, double E) {
  check_off_spectrum(S.eigenvalues, E);
  const VectorXd inv = (S.eigenvalues.array() - E).inverse().matrix();
  return S.eigenvectors * inv.asDiagonal() * S.eigenvectors.transpose();
}

std::vector<std::pair<int, int>> eigenvalue_clusters(const VectorXd& eigenvalues, double tol) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(eigenvalues.size());
  int begin = 0;
  for (int j = 1; j <= n; ++j) {
    if (j == n || eigenvalues(j) - eigenvalues(j - 1) > tol) {
      out.emplace_back(begin, j);
      begin = j;
    }
  }
  return out;
}

EfcResult efc(const SpectralData& S, int x, int y) {
  EfcResult r;
  for (auto [b, e] : eigenvalue_clusters(S.eigenvalues)) {
    double c = 0, lam = 0;
    for (int j = b; j < e; ++j) {
      c += S.eigenvectors(x, j) * S.eigenvectors(y, j);
      lam += S.eigenvalues(j);
    }
    r.energies.push_back(lam / (e - b));
    r.contributions.push_back(c);
    r.value += std::fabs(c);
  }
  return r;
}

BallSystem make_ball_system(const Model& model, const MultiBall& ball, int volume_budget) {
  BallSystem s;
  s.ball = ball;
  if (static_cast<long long>(ball.size()) > volume_budget)
    throw BudgetExceeded("ball has " + std::to_string(ball.size()) + " configurations, budget is " +
                         std::to_string(volume_budget));
  s.volume = ball_volume(*model.graph, ball);
  s.H = assemble(model, s.volume, ball_id(ball), volume_budget);
  s.spectrum = eigendecompose(s.H);
  s.boundary = inner_boundary(*model.graph, s.volume);
  s.center_index = s.volume.find(ball.center);
  return s;
}

double boundary_prefactor(const GrowthCertificate& growth, int N, int L) {
  return std::pow(growth.C, 2.0 * N) * std::pow(static_cast<double>(L), N * growth.d);
}

double boundary_green_max(const BallSystem& sys, double E) {
  if (sys.boundary.empty()) throw ContractViolation("boundary functional undefined: empty inner boundary");
  const VectorXd row = green_row(sys.spectrum, E, sys.center_index);
  double m = 0;
  for (int z : sys.boundary) m = std::max(m, std::fabs(row(z)));
  return m;
}

double boundary_functional(const BallSystem& sys, double E, const GrowthCertificate& growth) {
  return boundary_prefactor(growth, sys.ball.particles(), sys.ball.radius) * boundary_green_max(sys, E);
}

GriResult gri_check(const Graph& g, const VolumeIndex& V, const SpectralData& SV, const VolumeIndex& W,
                    const SpectralData& SW, int x, int y, double E) {
  const int xw = W.find(V[x]);
  require(xw >= 0, "gri_check: x must lie in W");
  require(!W.contains(V[y]), "gri_check: y must lie in V \\ W");
  const VectorXd gw = green_row(SW, E, xw);
  const VectorXd gv = green_row(SV, E, y);
  GriResult r;
  r.lhs = std::fabs(gv(x));
  for (auto [u, v] : boundaries(g, V, W).edges) r.rhs += std::fabs(gw(W.find(V[u]))) * std::fabs(gv(v));
  r.holds = r.lhs <= r.rhs + 1e-9 * r.rhs;
  return r;
}

GriResult gri_check(const Model& model, const VolumeIndex& V, const VolumeIndex& W, const Configuration& x,
                    const Configuration& y, double E) {
  SpectralData SV = eigendecompose(assemble(model, V));
  SpectralData SW = eigendecompose(assemble(model, W));
  const int ix = V.find(x), iy = V.find(y);
  require(ix >= 0 && iy >= 0, "gri_check: x and y must lie in V");
  return gri_check(*model.graph, V, SV, W, SW, ix, iy, E);
}

std::vector<LocalizationFit> localization_profile(const Graph& g, const VolumeIndex& V, const SpectralData& S,
                                                  double floor) {
  require(V.size() >= 2, "localization_profile: volume needs at least two configurations");
  std::vector<LocalizationFit> out;
  for (int j = 0; j < S.size(); ++j) {
    LocalizationFit f;
    const auto psi = S.eigenvectors.col(j);
    double best = -1;
    for (int i = 0; i < V.size(); ++i)
      if (std::fabs(psi(i)) > best) {
        best = std::fabs(psi(i));
        f.center = i;
      }
    std::vector<double> xs, ys;
    for (int i = 0; i < V.size(); ++i) {
      if (std::fabs(psi(i)) <= floor) continue;
      xs.push_back(rho_s(g, V[i], V[f.center]));
      ys.push_back(-std::log(std::fabs(psi(i))));
    }
    f.points = static_cast<int>(xs.size());
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      mx += xs[k] / n;
      my += ys[k] / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxx += (xs[k] - mx) * (xs[k] - mx);
      sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx == 0) {
      f.point_support = true;
      f.amplitude = std::exp(-my);
    } else {
      f.mass = sxy / sxx;
      const double a = my - f.mass * mx;
      f.amplitude = std::exp(-a);
      double ss = 0;
      for (std::size_t k = 0; k < xs.size(); ++k) ss += std::pow(ys[k] - a - f.mass * xs[k], 2);
      f.residual = std::sqrt(ss / n);
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace mpmsa
