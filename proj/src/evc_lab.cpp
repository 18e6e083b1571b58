#include "mpmsa/evc_lab.hpp"

#include <algorithm>
#include <cmath>

#include "mpmsa/msa_classifier.hpp"
#include "mpmsa/parallel.hpp"

namespace mpmsa {

McEstimate wilson(long long successes, long long trials, std::uint64_t seed, double z) {
  require(trials >= 1, "wilson: trials must be positive");
  McEstimate e;
  e.trials = trials;
  e.successes = successes;
  e.seed = seed;
  const double n = static_cast<double>(trials);
  const double p = successes / n;
  e.estimate = p;
  const double denom = 1 + z * z / n;
  const double center = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  e.ci_low = std::max(0.0, center - half);
  e.ci_high = std::min(1.0, center + half);
  if (successes == 0) e.ci_low = 0;
  if (successes == trials) e.ci_high = 1;
  return e;
}

double normal_quantile_two_sided(double alpha) {
  require(alpha > 0 && alpha < 1, "normal_quantile_two_sided: alpha in (0,1)");
  double lo = 0, hi = 40;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (std::erfc(mid / std::sqrt(2.0)) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

McEstimate wegner_estimate(const RandomModel& rm, const MultiBall& ball, double beta, double E, long long trials,
                           std::uint64_t seed, int volume_budget) {
  require(trials >= 1, "wegner_estimate: trials must be positive");
  const VolumeIndex V = ball_volume(*rm.graph, ball);
  const double threshold = resonance_threshold(beta, ball.radius);
  std::vector<char> hit(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<int>(trials), [&](int i) {
    DisorderSample s = rm.draw(trial_seed(seed, static_cast<std::uint64_t>(i)));
    VectorXd ev = eigenvalues_only(assemble(rm.realize(s), V, "", volume_budget).matrix);
    hit[i] = spectral_distance(ev, E) < threshold;
  });
  long long k = 0;
  for (char h : hit) k += h;
  return wilson(k, trials, seed);
}

double sorted_set_distance(const VectorXd& a, const VectorXd& b) {
  double best = INFINITY;
  Eigen::Index i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    best = std::min(best, std::fabs(a(i) - b(j)));
    if (a(i) < b(j))
      ++i;
    else
      ++j;
  }
  return best;
}

bool in_small_s_regime(long long successes, long long trials) {
  return successes >= 10 && successes <= small_s_probability * trials;
}

PowerLawFit two_volume_evc(const RandomModel& rm, const MultiBall& ballx, const MultiBall& bally,
                           const std::vector<double>& s_grid, long long trials, std::uint64_t seed, int volume_budget) {
  require(trials >= 1, "two_volume_evc: trials must be positive");
  const Graph& g = *rm.graph;
  require(ballx.radius == bally.radius && ballx.particles() == bally.particles(), "two_volume_evc: balls differ in shape");
  require(rho_s(g, ballx.center, bally.center) >= 3 * ballx.particles() * ballx.radius,
          "two_volume_evc: balls must be 3NL-distant");
  const VolumeIndex Vx = ball_volume(g, ballx), Vy = ball_volume(g, bally);
  std::vector<double> dist(static_cast<std::size_t>(trials));
  parallel_for(static_cast<int>(trials), [&](int i) {
    DisorderSample s = rm.draw(trial_seed(seed, static_cast<std::uint64_t>(i)));
    Model m = rm.realize(s);
    dist[i] = sorted_set_distance(eigenvalues_only(assemble(m, Vx, "", volume_budget).matrix),
                                  eigenvalues_only(assemble(m, Vy, "", volume_budget).matrix));
  });
  PowerLawFit fit;
  fit.s = s_grid;
  std::vector<double> lx, ly;
  for (double s : s_grid) {
    long long k = std::count_if(dist.begin(), dist.end(), [s](double d) { return d <= s; });
    fit.probability.push_back(wilson(k, trials, seed));
    if (s > 0 && in_small_s_regime(k, trials)) {
      lx.push_back(std::log(s));
      ly.push_back(std::log(static_cast<double>(k) / trials));
    }
  }
  fit.points_used = static_cast<int>(lx.size());
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      mx += lx[k] / n;
      my += ly[k] / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      sxx += (lx[k] - mx) * (lx[k] - mx);
      sxy += (lx[k] - mx) * (ly[k] - my);
    }
    fit.theta = sxx > 0 ? sxy / sxx : 0;
    const double a = my - fit.theta * mx;
    fit.constant = std::exp(a);
    double ss = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) ss += std::pow(ly[k] - a - fit.theta * lx[k], 2);
    fit.residual = std::sqrt(ss / n);
  }
  return fit;
}

namespace {

// Particles of x whose L-balls lie in B; -1 when some L-ball straddles B.
int count_inside(const Graph& g, const Configuration& x, int L, const std::vector<Vertex>& B) {
  std::vector<char> in(g.size(), 0);
  for (Vertex v : B) in[v] = 1;
  int n = 0;
  for (Vertex c : x) {
    int inside = 0, outside = 0;
    for (Vertex v : g.ball(c, L)) (in[v] ? inside : outside)++;
    if (inside && outside) return -1;
    n += outside == 0;
  }
  return n;
}

}  // namespace

ShiftReport spectral_shift_check(const Model& model, const MultiBall& ballx, const MultiBall& bally,
                                 const SeparationCertificate& cert, double t) {
  const Graph& g = *model.graph;
  ShiftReport r;
  r.n_x = count_inside(g, ballx.center, ballx.radius, cert.ball);
  r.n_y = count_inside(g, bally.center, bally.radius, cert.ball);
  require(r.n_x >= 0 && r.n_y >= 0 && r.n_x != r.n_y, "spectral_shift_check: certificate does not separate the balls");
  require(set_diameter(g, cert.ball) <= 2 * ballx.particles() * ballx.radius,
          "spectral_shift_check: certificate ball too large");

  DisorderSample shifted = *model.sample;
  for (Vertex v : cert.ball) shifted.values[v] += t;
  Model m1 = model;
  m1.sample = &shifted;
  auto spectra = [&](const Model& m, const MultiBall& b) {
    return eigenvalues_only(assemble(m, ball_volume(g, b)).matrix);
  };
  r.expected_x = model.g * r.n_x * t;
  r.expected_y = model.g * r.n_y * t;
  r.deviation_x = ((spectra(m1, ballx) - spectra(model, ballx)).array() - r.expected_x).abs().maxCoeff();
  r.deviation_y = ((spectra(m1, bally) - spectra(model, bally)).array() - r.expected_y).abs().maxCoeff();
  r.exact = r.deviation_x <= 1e-9 && r.deviation_y <= 1e-9;
  return r;
}

double conditional_modulus(const PotentialDistribution& dist, const std::vector<double>& eta, double s,
                           int grid_points) {
  require(!eta.empty(), "conditional_modulus: empty fluctuation vector");
  if (s <= 0) return 0;
  const double lo = dist.a - *std::min_element(eta.begin(), eta.end());
  const double hi = dist.b - *std::max_element(eta.begin(), eta.end());
  if (!(hi > lo) || s >= hi - lo) return 1;
  const int n = grid_points;
  const double h = (hi - lo) / (n - 1);
  std::vector<double> F(n, 0), dens(n);
  for (int k = 0; k < n; ++k) {
    const double xi = std::min(hi, lo + k * h);
    double p = 1;
    for (double e : eta) p *= dist.density(std::clamp(xi + e, dist.a, dist.b));
    dens[k] = p;
  }
  for (int k = 1; k < n; ++k) F[k] = F[k - 1] + 0.5 * h * (dens[k] + dens[k - 1]);
  if (!(F[n - 1] > 0)) return 1;
  for (double& f : F) f /= F[n - 1];
  auto cdf = [&](double t) {
    if (t <= lo) return 0.0;
    if (t >= hi) return 1.0;
    const double u = (t - lo) / h;
    const int k = std::min(n - 2, static_cast<int>(u));
    const double w = u - k;
    return F[k] * (1 - w) + F[k + 1] * w;
  };
  double best = 0;
  for (int k = 0; k < n; ++k) best = std::max(best, cdf(lo + k * h + s) - F[k]);
  return std::min(1.0, best);
}

std::vector<RcmRow> rcm_modulus(const PotentialDistribution& dist, const std::vector<int>& q_sizes,
                                const std::vector<double>& s_grid, long long trials, std::uint64_t seed) {
  require(trials >= 1, "rcm_modulus: trials must be positive");
  for (int q : q_sizes) require(q >= 1, "rcm_modulus: #Q must be positive");
  std::vector<RcmRow> rows;
  const double c2 = std::pow(4 * dist.R * dist.p_upper, 2);
  for (std::size_t qi = 0; qi < q_sizes.size(); ++qi) {
    const int q = q_sizes[qi];
    const std::uint64_t qseed = mix(seed, qi);
    std::vector<double> xi(static_cast<std::size_t>(trials));
    std::vector<std::vector<double>> cond(static_cast<std::size_t>(trials), std::vector<double>(s_grid.size()));
    parallel_for(static_cast<int>(trials), [&](int i) {
      const std::uint64_t ts = trial_seed(qseed, static_cast<std::uint64_t>(i));
      std::vector<double> v(q);
      double mean = 0;
      for (int j = 0; j < q; ++j) {
        v[j] = dist.quantile(to_unit(mix(ts, static_cast<std::uint64_t>(j))));
        mean += v[j] / q;
      }
      for (double& x : v) x -= mean;
      xi[i] = mean;
      for (std::size_t si = 0; si < s_grid.size(); ++si) cond[i][si] = conditional_modulus(dist, v, s_grid[si]);
    });
    std::vector<double> sorted = xi;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t si = 0; si < s_grid.size(); ++si) {
      const double s = s_grid[si];
      RcmRow r;
      r.q = q;
      r.s = s;
      // Largest number of samples in a half-open window [xi_i, xi_i + s).
      std::size_t best = 0;
      for (std::size_t i = 0, j = 0; i < sorted.size(); ++i) {
        j = std::max(j, i);
        while (j < sorted.size() && sorted[j] < sorted[i] + s) ++j;
        best = std::max(best, j - i);
      }
      r.unconditional_modulus = static_cast<double>(best) / trials;
      r.threshold = q * std::pow(s, 2.0 / 3.0);
      r.budget = c2 * std::pow(s, 2.0 / 3.0);
      long long exceed = 0;
      double sum = 0;
      for (long long i = 0; i < trials; ++i) {
        sum += cond[i][si];
        exceed += cond[i][si] > 0 && cond[i][si] >= r.threshold;
      }
      r.mean_conditional_modulus = sum / trials;
      r.exceed_frequency = static_cast<double>(exceed) / trials;
      r.within_budget = r.exceed_frequency <= r.budget;
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace mpmsa
