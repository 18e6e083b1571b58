#include "mpmsa/msa_induction.hpp"

#include <algorithm>
#include <cmath>

#include "mpmsa/parallel.hpp"

namespace mpmsa {

namespace {

double scale_target(const MsaSetup& setup, int N, long long L) {
  const ParameterSet& p = setup.params;
  if (p.mode == Mode::subexp) return std::exp(-setup.mass.nu.at(N) * std::pow(static_cast<double>(L), p.kappa));
  return std::pow(static_cast<double>(L), -setup.mass.P.at(N));
}

// Pick the energy with the largest count; ties go to the first.
McEstimate reduce_worst(const std::vector<long long>& hits, long long trials, std::uint64_t seed, double z, int& arg) {
  arg = 0;
  for (int i = 1; i < static_cast<int>(hits.size()); ++i)
    if (hits[i] > hits[arg]) arg = i;
  return wilson(hits[arg], trials, seed, z);
}

}  // namespace

ScaleReport scale_probabilities(const RandomModel& rm, const Configuration& center, const MsaSetup& setup,
                                const EnergyPolicy& policy, long long trials, std::uint64_t seed) {
  require(trials >= 1, "scale_probabilities: trials must be positive");
  const Graph& g = *rm.graph;
  const int N = static_cast<int>(center.size());
  require(N >= 1 && N <= setup.params.N_star, "scale_probabilities: particle number outside 1..N*");
  std::vector<double> energies = policy.worst_over_grid ? policy.grid : std::vector<double>{policy.E};
  require(!energies.empty(), "scale_probabilities: empty energy grid");
  const int nE = static_cast<int>(energies.size());
  const double m = setup.mass.mass(N);

  ScaleReport report;
  report.energy_policy = policy.worst_over_grid ? "worst-over-grid" : "fixed";
  report.confidence_z = nE > 1 ? normal_quantile_two_sided(0.05 / nE) : 1.959963984540054;

  const auto& Ls = setup.schedule.L;
  const int nk = static_cast<int>(Ls.size());
  std::vector<char> skipped(nk, 0);
  std::vector<MultiBall> balls;
  std::vector<std::vector<Configuration>> wi_centers(nk);
  for (int k = 0; k < nk; ++k) {
    balls.push_back(make_ball(g, center, static_cast<int>(Ls[k])));
    skipped[k] = static_cast<long long>(balls[k].size()) > setup.volume_budget;
    if (skipped[k] || k == 0 || N == 1) continue;
    const int r = static_cast<int>(Ls[k - 1]);
    for (const Configuration& u : balls[k].members()) {
      if (!ball_contains(g, balls[k], u, r)) continue;
      if (classify_interactivity(g, make_ball(g, u, r)).weakly_interactive) wi_centers[k].push_back(u);
    }
  }

  // flags[trial][k] = {S per energy, R per energy, WI-S per energy}
  std::vector<std::vector<std::vector<char>>> flags(static_cast<std::size_t>(trials),
                                                   std::vector<std::vector<char>>(nk));
  parallel_for(static_cast<int>(trials), [&](int i) {
    const DisorderSample s = rm.draw(trial_seed(seed, static_cast<std::uint64_t>(i)));
    const Model model = rm.realize(s);
    for (int k = 0; k < nk; ++k) {
      std::vector<char>& f = flags[i][k];
      f.assign(3 * nE, 0);
      if (skipped[k]) continue;
      const BallSystem sys = make_ball_system(model, balls[k], setup.volume_budget);
      const double rthr = resonance_threshold(setup.params.beta, static_cast<int>(Ls[k]));
      for (int e = 0; e < nE; ++e) {
        f[e] = !nonsingular(sys, energies[e], setup, m).nonsingular;
        f[nE + e] = spectral_distance(sys.spectrum.eigenvalues, energies[e]) < rthr;
      }
      if (wi_centers[k].empty()) continue;
      const int r = static_cast<int>(Ls[k - 1]);
      for (const Configuration& u : wi_centers[k]) {
        const BallSystem sub = make_ball_system(model, make_ball(g, u, r), setup.volume_budget);
        for (int e = 0; e < nE; ++e)
          if (!f[2 * nE + e] && !nonsingular(sub, energies[e], setup, m).nonsingular) f[2 * nE + e] = 1;
      }
    }
  });

  for (int k = 0; k < nk; ++k) {
    ScaleRow row;
    row.k = k;
    row.L = Ls[k];
    row.skipped = skipped[k];
    row.target = scale_target(setup, N, Ls[k]);
    if (!row.skipped) {
      std::vector<long long> hp(nE, 0), hq(nE, 0), hs(nE, 0);
      for (long long i = 0; i < trials; ++i)
        for (int e = 0; e < nE; ++e) {
          hp[e] += flags[i][k][e];
          hq[e] += flags[i][k][nE + e];
          hs[e] += flags[i][k][2 * nE + e];
        }
      int arg = 0, dummy = 0;
      row.P = reduce_worst(hp, trials, seed, report.confidence_z, arg);
      row.worst_energy = energies[arg];
      row.Q = reduce_worst(hq, trials, seed, report.confidence_z, dummy);
      row.Q.estimate *= 4;
      row.Q.ci_low = std::min(4.0, 4 * row.Q.ci_low);
      row.Q.ci_high = std::min(4.0, 4 * row.Q.ci_high);
      row.S = reduce_worst(hs, trials, seed, report.confidence_z, dummy);
      row.meets_target = row.P.estimate <= row.target;
    }
    report.rows.push_back(row);
  }
  return report;
}

RecursionCheck recursion_bound(double P_k, double S_next, double Q_next, double C, int K, int N, double d,
                               long long L_next, double measured_P_next, double nu_N, double kappa) {
  require(P_k >= 0 && P_k <= 1 && S_next >= 0 && S_next <= 1, "recursion_bound: probabilities outside [0,1]");
  require(Q_next >= 0 && Q_next <= 4, "recursion_bound: Q outside [0,4]");
  require(K >= 1 && N >= 1 && L_next >= 1, "recursion_bound: K, N, L must be positive");
  RecursionCheck r;
  const double KN = static_cast<double>(K) * N;
  const double L = static_cast<double>(L_next);
  r.first_term = P_k == 0 ? 0 : 0.5 * std::pow(C, KN) * std::pow(L, KN * d) * std::pow(P_k, K + 1);
  r.rhs = r.first_term + S_next + 0.25 * Q_next;
  r.target = std::exp(-nu_N * std::pow(L, kappa));
  r.satisfied = measured_P_next <= r.rhs;
  r.meets_target = measured_P_next <= r.target;
  return r;
}

bool EnergyIntervalCover::covers(double E, double tol) const {
  for (const EnergyInterval& J : intervals)
    if (E >= J.lo - tol && E <= J.hi + tol) return true;
  return false;
}

namespace {

// G(E) = sum_k c_k / (p_k - E) with ascending poles.
struct Rational {
  std::vector<double> p, c;

  double value(double E) const {
    double s = 0;
    for (std::size_t k = 0; k < p.size(); ++k) s += c[k] / (p[k] - E);
    return s;
  }
  double derivative(double E) const {
    double s = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double t = p[k] - E;
      s += c[k] / (t * t);
    }
    return s;
  }
};

// Endpoint of a monotone piece: either a regular point or a pole approached from one side.
struct Endpoint {
  double E = 0;
  bool pole = false;
  double limit = 0;  // +-inf at a pole
};

double endpoint_value(const Rational& G, const Endpoint& e) { return e.pole ? e.limit : G.value(e.E); }

// Root of h on (l, r) given sign(h(l)) != sign(h(r)); bisection to adjacent doubles.
template <typename F>
double bisect(F&& h, double l, double r, bool h_left_negative) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (l + r);
    if (mid <= l || mid >= r) break;
    ((h(mid) < 0) == h_left_negative ? l : r) = mid;
  }
  return 0.5 * (l + r);
}

void superlevel_on_piece(const Rational& G, const Endpoint& L, const Endpoint& R, double A,
                         std::vector<EnergyInterval>& out) {
  const double vl = endpoint_value(G, L), vr = endpoint_value(G, R);
  // {G >= A} and {G <= -A} are intervals at one end of a monotone piece.
  for (int sgn : {1, -1}) {
    const double gl = sgn * vl - A, gr = sgn * vr - A;
    if (gl >= 0 && gr >= 0) {
      out.push_back({L.E, R.E});
    } else if (gl >= 0 || gr >= 0) {
      auto h = [&](double E) { return sgn * G.value(E) - A; };
      const double root = bisect(h, L.E, R.E, gl < 0);
      out.push_back(gl >= 0 ? EnergyInterval{L.E, root} : EnergyInterval{root, R.E});
    }
  }
}

void cover_rational(const Rational& G, double A, double lo, double hi, std::vector<EnergyInterval>& out) {
  std::vector<Endpoint> cuts{{lo, false, 0}};
  for (std::size_t k = 0; k < G.p.size(); ++k)
    if (G.p[k] > lo && G.p[k] < hi) cuts.push_back({G.p[k], true, 0});
  cuts.push_back({hi, false, 0});
  // A pole exactly at an end of I makes that end a pole too.
  for (std::size_t k = 0; k < G.p.size(); ++k) {
    if (G.p[k] == lo) cuts.front().pole = true;
    if (G.p[k] == hi) cuts.back().pole = true;
  }
  auto pole_coefficient = [&](double E) {
    double c = 0;
    for (std::size_t k = 0; k < G.p.size(); ++k)
      if (G.p[k] == E) c += G.c[k];
    return c;
  };
  constexpr int samples = 128;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    Endpoint a = cuts[s], b = cuts[s + 1];
    if (!(b.E > a.E)) continue;
    // Just right of a pole c/(p - E) -> -sign(c) inf; just left -> +sign(c) inf.
    if (a.pole) a.limit = pole_coefficient(a.E) > 0 ? -INFINITY : INFINITY;
    if (b.pole) b.limit = pole_coefficient(b.E) > 0 ? INFINITY : -INFINITY;
    // Critical points from a cosine-graded scan of G', refined by bisection.
    std::vector<double> grid;
    for (int j = 1; j < samples; ++j)
      grid.push_back(a.E + (b.E - a.E) * 0.5 * (1 - std::cos(M_PI * j / samples)));
    std::vector<Endpoint> pieces{a};
    double prev_E = a.E;
    double prev_d = a.pole ? pole_coefficient(a.E) : G.derivative(a.E);
    for (std::size_t j = 0; j <= grid.size(); ++j) {
      const double E = j < grid.size() ? grid[j] : b.E;
      const double d = j < grid.size() ? G.derivative(E) : (b.pole ? pole_coefficient(b.E) : G.derivative(b.E));
      if ((prev_d < 0 && d > 0) || (prev_d > 0 && d < 0)) {
        auto h = [&](double x) { return G.derivative(x); };
        const double z = bisect(h, prev_E, E, prev_d < 0);
        pieces.push_back({z, false, 0});
      }
      if (d != 0) {
        prev_d = d;
        prev_E = E;
      }
    }
    pieces.push_back(b);
    for (std::size_t q = 0; q + 1 < pieces.size(); ++q) superlevel_on_piece(G, pieces[q], pieces[q + 1], A, out);
  }
}

std::vector<EnergyInterval> merge(std::vector<EnergyInterval> v) {
  std::sort(v.begin(), v.end(), [](const EnergyInterval& x, const EnergyInterval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  std::vector<EnergyInterval> out;
  for (const EnergyInterval& J : v) {
    if (!out.empty() && J.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, J.hi);
    else
      out.push_back(J);
  }
  return out;
}

EnergyIntervalCover finish(std::vector<EnergyInterval> v) {
  EnergyIntervalCover c;
  c.intervals = merge(std::move(v));
  for (const EnergyInterval& J : c.intervals) c.total_length += J.hi - J.lo;
  return c;
}

}  // namespace

EnergyIntervalCover sublevel_cover(const BallSystem& sys, const GrowthCertificate& growth, double a, double I_lo,
                                   double I_hi) {
  require(a > 0, "sublevel_cover: level must be positive");
  require(I_lo < I_hi, "sublevel_cover: empty energy interval");
  std::vector<EnergyInterval> raw;
  if (sys.boundary.empty()) return finish(raw);
  const double A = a / boundary_prefactor(growth, sys.ball.particles(), sys.ball.radius);
  const SpectralData& S = sys.spectrum;
  const auto clusters = eigenvalue_clusters(S.eigenvalues);
  const int u = sys.center_index;
  for (int y : sys.boundary) {
    Rational G;
    for (const auto& [b, e] : clusters) {
      double c = 0, p = 0;
      for (int k = b; k < e; ++k) {
        c += S.eigenvectors(u, k) * S.eigenvectors(y, k);
        p += S.eigenvalues(k);
      }
      if (c == 0) continue;
      G.p.push_back(p / (e - b));
      G.c.push_back(c);
    }
    cover_rational(G, A, I_lo, I_hi, raw);
  }
  return finish(raw);
}

EnergyIntervalCover intersect(const EnergyIntervalCover& a, const EnergyIntervalCover& b) {
  std::vector<EnergyInterval> v;
  std::size_t i = 0, j = 0;
  while (i < a.intervals.size() && j < b.intervals.size()) {
    const double lo = std::max(a.intervals[i].lo, b.intervals[j].lo);
    const double hi = std::min(a.intervals[i].hi, b.intervals[j].hi);
    if (lo <= hi) v.push_back({lo, hi});
    (a.intervals[i].hi < b.intervals[j].hi ? i : j)++;
  }
  return finish(v);
}

double boundary_functional_or_inf(const BallSystem& sys, double E, const GrowthCertificate& growth) {
  try {
    return boundary_functional(sys, E, growth);
  } catch (const ResonanceError&) {
    return INFINITY;
  }
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  require(points >= 2 && lo <= hi, "linear_grid: need two points on an ordered interval");
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = lo + (hi - lo) * i / (points - 1);
  return v;
}

SupMinResult sup_min_functional(const BallSystem& x, const BallSystem& y, const GrowthCertificate& growth, double a,
                                const std::vector<double>& E_grid) {
  require(!E_grid.empty(), "sup_min_functional: empty energy grid");
  require(!x.boundary.empty() && !y.boundary.empty(), "sup_min_functional: ball without inner boundary");
  const auto [lo_it, hi_it] = std::minmax_element(E_grid.begin(), E_grid.end());
  std::vector<double> search = E_grid;
  if (*hi_it > *lo_it) {
    const EnergyIntervalCover both =
        intersect(sublevel_cover(x, growth, a, *lo_it, *hi_it), sublevel_cover(y, growth, a, *lo_it, *hi_it));
    for (const EnergyInterval& J : both.intervals) {
      search.push_back(J.lo);
      search.push_back(J.hi);
      for (int k = 1; k <= 64; ++k) search.push_back(J.lo + (J.hi - J.lo) * k / 65.0);
    }
  }
  SupMinResult r;
  r.sup = -INFINITY;
  for (double E : search) {
    const double v = std::min(boundary_functional_or_inf(x, E, growth), boundary_functional_or_inf(y, E, growth));
    if (v > r.sup) {
      r.sup = v;
      r.argmax = E;
    }
  }
  r.evaluations = static_cast<int>(search.size());
  r.exceeded = r.sup >= a;
  return r;
}

BridgeParameters bridge_parameters(double nu, double L, double kappa, double K) {
  require(K >= 1, "bridge_parameters: K must be at least 1");
  BridgeParameters b;
  const double t = nu * std::pow(L, kappa);
  b.a = std::exp(-t / 3);
  b.b = std::exp(-2 * t / 3);
  b.c = std::exp(-t / 8);
  b.q = std::exp(-t);
  b.precondition = b.b <= std::min(b.a * b.c * b.c / K, b.c);
  return b;
}

double student_t95(int dof) {
  require(dof >= 1, "student_t95: degrees of freedom must be positive");
  static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                                 2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                                 2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof <= 30) return table[dof - 1];
  const double z = 1.959963984540054;
  return z + (z * z * z + z) / (4.0 * dof);
}

namespace {

struct LineFit {
  double slope = 0, intercept = 0;
  bool ok = false;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const std::size_t n = x.size();
  if (n < 2) return f;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.ok = true;
  return f;
}

// Fit -log(mean EFC) against rho_S^kappa over pairs with rho_S > 0.
LineFit fit_mass(const std::vector<int>& rho, const std::vector<double>& mean, double kappa) {
  std::vector<double> x, y;
  for (std::size_t p = 0; p < rho.size(); ++p) {
    if (rho[p] == 0) continue;
    x.push_back(std::pow(static_cast<double>(rho[p]), kappa));
    y.push_back(-std::log(std::max(mean[p], 1e-300)));
  }
  return least_squares(x, y);
}

}  // namespace

EfcDecayReport efc_decay_experiment(const Graph& graph, const VolumeIndex& volume, const PotentialDistribution& dist,
                                    const InteractionPotential& U, const std::vector<double>& g_grid,
                                    const std::vector<std::pair<Configuration, Configuration>>& pairs,
                                    double kappa, long long trials, std::uint64_t seed, int batches) {
  require(trials >= 1, "efc_decay_experiment: trials must be positive");
  require(!g_grid.empty() && !pairs.empty(), "efc_decay_experiment: empty coupling grid or pair list");
  require(batches >= 1, "efc_decay_experiment: batches must be positive");
  const int nb = static_cast<int>(std::min<long long>(batches, trials));
  const int np = static_cast<int>(pairs.size());
  const int ng = static_cast<int>(g_grid.size());
  std::vector<std::pair<int, int>> idx;
  std::vector<int> rho;
  for (const auto& [x, y] : pairs) {
    const int ix = volume.find(x), iy = volume.find(y);
    require(ix >= 0 && iy >= 0, "efc_decay_experiment: pair outside the volume");
    idx.emplace_back(ix, iy);
    rho.push_back(rho_s(graph, x, y));
  }

  // values[trial][g * np + pair]
  std::vector<std::vector<double>> values(static_cast<std::size_t>(trials), std::vector<double>(ng * np));
  parallel_for(static_cast<int>(trials), [&](int i) {
    const DisorderSample s = sample_potential(dist, graph, trial_seed(seed, static_cast<std::uint64_t>(i)));
    for (int gi = 0; gi < ng; ++gi) {
      const Model model{&graph, g_grid[gi], &s, U};
      const SpectralData S = eigendecompose(assemble(model, volume, "", static_cast<int>(volume.size())));
      for (int p = 0; p < np; ++p) values[i][gi * np + p] = efc(S, idx[p].first, idx[p].second).value;
    }
  });

  auto means = [&](int gi, long long from, long long to) {
    std::vector<double> m(np, 0);
    for (long long i = from; i < to; ++i)
      for (int p = 0; p < np; ++p) m[p] += values[i][gi * np + p];
    for (double& v : m) v /= static_cast<double>(to - from);
    return m;
  };
  auto batch_range = [&](int b) { return std::make_pair(b * trials / nb, (b + 1) * trials / nb); };

  EfcDecayReport report;
  for (int gi = 0; gi < ng; ++gi) {
    EfcDecayFit fit;
    fit.g = g_grid[gi];
    const std::vector<double> m = means(gi, 0, trials);
    for (int p = 0; p < np; ++p) fit.pairs.push_back({pairs[p].first, pairs[p].second, rho[p], m[p]});
    const LineFit all = fit_mass(rho, m, kappa);
    fit.M = all.slope;
    fit.intercept = all.intercept;
    for (int b = 0; b < nb; ++b) {
      const auto [from, to] = batch_range(b);
      fit.batch_M.push_back(fit_mass(rho, means(gi, from, to), kappa).slope);
    }
    fit.M_ci_low = fit.M_ci_high = fit.M;
    if (nb >= 2) {
      double mean = 0, ss = 0;
      for (double v : fit.batch_M) mean += v / nb;
      for (double v : fit.batch_M) ss += (v - mean) * (v - mean);
      const double half = student_t95(nb - 1) * std::sqrt(ss / (nb - 1) / nb);
      fit.M_ci_low = fit.M - half;
      fit.M_ci_high = fit.M + half;
    }
    report.fits.push_back(fit);
  }

  std::vector<int> order(ng);
  for (int gi = 0; gi < ng; ++gi) order[gi] = gi;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::fabs(g_grid[a]) < std::fabs(g_grid[b]); });
  int agree = 0;
  for (int b = 0; b < nb; ++b) {
    bool ok = true;
    for (int q = 0; q + 1 < ng; ++q)
      ok = ok && report.fits[order[q]].batch_M[b] <= report.fits[order[q + 1]].batch_M[b];
    agree += ok;
  }
  report.order_agreement = static_cast<double>(agree) / nb;
  return report;
}

}  // namespace mpmsa
