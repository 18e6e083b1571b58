#include "mpmsa/msa_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "mpmsa/text.hpp"

namespace mpmsa {

std::string to_string(Mode m) { return m == Mode::subexp ? "subexp" : "exp"; }

Mode parse_mode(const std::string& s) {
  if (s == "subexp") return Mode::subexp;
  if (s == "exp") return Mode::exp;
  throw ConfigError("unknown mode '" + s + "' (expected subexp or exp)");
}

std::vector<std::string> validate_structure(const ParameterSet& p) {
  std::vector<std::string> v;
  if (p.N_star < 1) v.push_back("N* >= 1");
  if (!(p.zeta > 0)) v.push_back("zeta > 0");
  if (!(p.beta > 0)) v.push_back("beta > 0");
  if (!(p.delta > 0)) v.push_back("delta > 0");
  if (!(p.kappa > 0)) v.push_back("kappa > 0");
  if (!(p.m_star > 0)) v.push_back("m* > 0");
  if (!(p.nu_star > 0)) v.push_back("nu* > 0");
  if (p.K < 0) v.push_back("K >= 0");
  if (p.L0 < 1) v.push_back("L0 >= 1");
  if (!(p.d > 0)) v.push_back("d > 0");
  if (p.mode == Mode::subexp && p.B < 2) v.push_back("B >= 2");
  if (p.mode == Mode::exp && !(p.alpha > 1)) v.push_back("alpha > 1");
  return v;
}

std::vector<std::string> validate(const ParameterSet& p) {
  std::vector<std::string> v;
  const double lnL0 = std::log(static_cast<double>(p.L0));
  if (p.L0 < 2) v.push_back("L0 >= 2");
  if (p.mode == Mode::subexp) {
    if (!(p.kappa > 0)) v.push_back("kappa > 0");
    if (!(p.kappa < p.zeta)) v.push_back("kappa < zeta");
    if (!(p.beta > 0)) v.push_back("beta > 0");
    if (!(p.beta < p.delta)) v.push_back("beta < delta");
    if (!(p.delta < std::min(p.zeta, 1.0))) v.push_back("delta < min(zeta,1)");
    if (!(p.beta + std::log(8.0 * p.B) / lnL0 < p.delta)) v.push_back("beta + ln(8B)/ln(L0) < delta");
    if (!(p.B >= 2 && p.delta < 1.0 - std::log(12.0) / std::log(static_cast<double>(p.B))))
      v.push_back("delta < 1 - ln(12)/ln(B)");
    if (!(p.B >= 24LL * p.N_star * p.K)) v.push_back("B >= 24*N*K");
    if (!(p.m_star >= 1)) v.push_back("m* >= 1");
    if (!(p.nu_star >= 1)) v.push_back("nu* >= 1");
  } else {
    if (!(p.tau > 1.0 / p.zeta)) v.push_back("tau > 1/zeta");
    if (!(p.tau > 1.0 + std::log(3.0 * p.N_star) / lnL0)) v.push_back("tau > 1 + ln(3N)/ln(L0)");
    if (!(p.beta > 0)) v.push_back("beta > 0");
    if (!(p.beta < std::min(p.zeta, 1.0))) v.push_back("beta < min(zeta,1)");
    if (!(p.alpha > std::max(p.tau, 1.5))) v.push_back("alpha > max(tau,3/2)");
    if (!(p.alpha < 7.0 / (8.0 * p.beta))) v.push_back("alpha < 7/(8 beta)");
    if (!(p.P_star > 4.0 * p.N_star * p.d * p.alpha)) v.push_back("P* > 4*N*d*alpha");
    if (!(p.m_star >= 1)) v.push_back("m* >= 1");
  }
  for (auto& s : validate_structure(p))
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  return v;
}

int ScaleSchedule::index_of(long long radius) const {
  for (std::size_t k = 0; k < L.size(); ++k)
    if (L[k] == radius) return static_cast<int>(k);
  return -1;
}

ScaleSchedule scales(const ParameterSet& p, int kmax, long long max_radius) {
  require(kmax >= 0, "scales: kmax >= 0");
  if (p.L0 < 1) throw ConfigError("L0 must be positive");
  ScaleSchedule s;
  s.mode = p.mode;
  long long L = p.L0;
  for (int k = 0; k <= kmax; ++k) {
    if (L > max_radius) {
      s.truncated = true;
      break;
    }
    s.L.push_back(L);
    if (k == kmax) break;
    long long next;
    if (p.mode == Mode::subexp) {
      if (p.B < 2) throw ConfigError("non-increasing schedule: B < 2");
      if (L > LLONG_MAX / p.B) {
        s.truncated = true;
        break;
      }
      next = L * p.B;
    } else {
      long double r = std::pow(static_cast<long double>(L), static_cast<long double>(p.alpha));
      if (r > 9.0e18L) {
        s.truncated = true;
        break;
      }
      next = static_cast<long long>(std::floor(r * (1 + 1e-15L)));
      if (next <= L) throw ConfigError("non-increasing schedule: floor(L^alpha) <= L at L = " + std::to_string(L));
    }
    L = next;
  }
  return s;
}

MassSchedule mass_schedule(const ParameterSet& p) {
  MassSchedule s;
  const int n = p.N_star;
  s.m.assign(n + 2, 0);
  s.nu.assign(n + 2, 0);
  s.P.assign(n + 2, 0);
  const double cm = 1 + 4 * std::pow(static_cast<double>(p.L0), p.beta - p.delta);
  const double cn = 2 * std::pow(static_cast<double>(p.B), p.kappa);
  const double cp = 2 * p.alpha;
  s.m[n + 1] = p.m_star;
  s.nu[n + 1] = p.nu_star;
  s.P[n + 1] = p.P_star;
  for (int N = n; N >= 1; --N) {
    s.m[N] = cm * s.m[N + 1];
    s.nu[N] = cn * s.nu[N + 1];
    s.P[N] = cp * s.P[N + 1];
  }
  return s;
}

double gamma_mass(double m, double L) { return m * (1 + std::pow(L, -0.125)); }

double ns_threshold(const ParameterSet& p, double m, int L) {
  const double l = L;
  if (p.mode == Mode::subexp) return std::exp(-m * std::pow(l, p.delta));
  return std::exp(-gamma_mass(m, l) * l);
}

double resonance_threshold(double beta, int L) { return 2 * std::exp(-std::pow(static_cast<double>(L), beta)); }

NsOutcome nonsingular(const BallSystem& sys, double E, const MsaSetup& setup, double m) {
  NsOutcome o;
  o.threshold = ns_threshold(setup.params, m, sys.ball.radius);
  if (sys.boundary.empty()) {
    o.nonsingular = true;  // empty maximum
    return o;
  }
  try {
    o.value = boundary_functional(sys, E, setup.growth);
    o.nonsingular = o.value <= o.threshold;
  } catch (const ResonanceError&) {
    o.determined = false;
    o.nonsingular = false;
    o.value = INFINITY;
  }
  return o;
}

namespace {

VectorXd ball_eigenvalues(const Model& model, const Configuration& center, int L, int budget) {
  MultiBall b = make_ball(*model.graph, center, L);
  if (static_cast<long long>(b.size()) > budget) throw BudgetExceeded("ball exceeds the volume budget");
  return eigenvalues_only(assemble(model, ball_volume(*model.graph, b), ball_id(b), budget).matrix);
}

Configuration pick(const Configuration& x, const std::vector<int>& idx) {
  Configuration out;
  for (int j : idx) out.push_back(x[j]);
  return out;
}

}  // namespace

CnrOutcome completely_nonresonant(const Model& model, const Configuration& center, int k, double E,
                                  const MsaSetup& setup) {
  require(k >= 1 && k < static_cast<int>(setup.schedule.L.size()), "CNR needs a scale index k >= 1");
  CnrOutcome o;
  for (long long l = setup.schedule.L[k - 1]; l <= setup.schedule.L[k]; ++l) {
    VectorXd ev = ball_eigenvalues(model, center, static_cast<int>(l), setup.volume_budget);
    if (spectral_distance(ev, E) < resonance_threshold(setup.params.beta, static_cast<int>(l))) {
      o.cnr = false;
      o.witness_radius = static_cast<int>(l);
      break;
    }
  }
  return o;
}

std::vector<int> distant_packing(const Graph& g, const std::vector<Configuration>& pts, long long R, bool& exhaustive) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ok[i][j] = i != j && rho_s(g, pts[i], pts[j]) >= R;
  std::vector<int> best;
  if (n <= 12) {
    exhaustive = true;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) s.push_back(i);
      if (s.size() <= best.size()) continue;
      bool good = true;
      for (std::size_t a = 0; a < s.size() && good; ++a)
        for (std::size_t b = a + 1; b < s.size() && good; ++b) good = ok[s[a]][s[b]];
      if (good) best = s;
    }
    return best;
  }
  exhaustive = false;
  best.push_back(0);  // n > 12 here
  for (;;) {
    int pick_i = -1, pick_d = -1;
    for (int i = 0; i < n; ++i) {
      bool compatible = true;
      int dmin = INT_MAX;
      for (int c : best) {
        compatible = compatible && ok[i][c];
        dmin = std::min(dmin, rho_s(g, pts[i], pts[c]));
      }
      if (compatible && dmin > pick_d) {
        pick_i = i;
        pick_d = dmin;
      }
    }
    if (pick_i < 0) break;
    best.push_back(pick_i);
  }
  return best;
}

GoodOutcome is_good(const Model& model, const Configuration& center, int k_plus_1, double E, const MsaSetup& setup) {
  require(k_plus_1 >= 1 && k_plus_1 < static_cast<int>(setup.schedule.L.size()), "is_good: needs a scale index >= 1");
  const Graph& g = *model.graph;
  const int N = static_cast<int>(center.size());
  const int Lk = static_cast<int>(setup.schedule.L[k_plus_1 - 1]);
  GoodOutcome o;
  o.cnr = completely_nonresonant(model, center, k_plus_1, E, setup).cnr;
  o.distance_rule = setup.params.mode == Mode::subexp
                        ? 8LL * N * Lk
                        : static_cast<long long>(std::ceil(std::pow(static_cast<double>(Lk), setup.params.tau)));
  const MultiBall outer = make_ball(g, center, static_cast<int>(setup.schedule.L[k_plus_1]));
  const double m = setup.mass.mass(N);
  for (const auto& v : outer.members()) {
    if (!ball_contains(g, outer, v, Lk)) continue;
    BallSystem sub = make_ball_system(model, make_ball(g, v, Lk), setup.volume_budget);
    if (!nonsingular(sub, E, setup, m).nonsingular) o.singular_centers.push_back(v);
  }
  for (int i : distant_packing(g, o.singular_centers, o.distance_rule, o.exhaustive))
    o.packing.push_back(o.singular_centers[i]);
  o.good = o.cnr && static_cast<int>(o.packing.size()) <= setup.params.K;
  return o;
}

WiOutcome classify_wi(const Model& model, const MultiBall& ball, const CanonicalSplit& split, double E,
                      const MsaSetup& setup) {
  require(split.distance > ball.radius && !split.Jc.empty(), "classify_wi: ball must be weakly interactive");
  const int k = setup.schedule.index_of(ball.radius);
  require(k >= 1, "classify_wi: CNR needs the radius to be a scale L_k with k >= 1");
  const Graph& g = *model.graph;
  struct Side {
    Configuration center;
    BallSystem sys;
    std::vector<VectorXd> concentric;  // spectra at radii L_{k-1}..L_k
    double mass_of_other = 0;  // m_{#particles of this factor}
  };
  auto make_side = [&](const std::vector<int>& idx) {
    Side s;
    s.center = pick(ball.center, idx);
    s.sys = make_ball_system(model, make_ball(g, s.center, ball.radius), setup.volume_budget);
    for (long long l = setup.schedule.L[k - 1]; l <= setup.schedule.L[k]; ++l)
      s.concentric.push_back(ball_eigenvalues(model, s.center, static_cast<int>(l), setup.volume_budget));
    s.mass_of_other = setup.mass.mass(static_cast<int>(idx.size()));
    return s;
  };
  Side a = make_side(split.J), b = make_side(split.Jc);

  WiOutcome o;
  // For every eigenvalue of one factor, the other factor must be CNR / NS at the shifted energy.
  auto check = [&](const Side& from, const Side& to, const char* tag) {
    for (int i = 0; i < from.sys.spectrum.size(); ++i) {
      const double shifted = E - from.sys.spectrum.eigenvalues(i);
      if (o.fnr) {
        for (std::size_t r = 0; r < to.concentric.size(); ++r) {
          const int l = static_cast<int>(setup.schedule.L[k - 1] + static_cast<long long>(r));
          if (spectral_distance(to.concentric[r], shifted) < resonance_threshold(setup.params.beta, l)) {
            o.fnr = false;
            o.fnr_witness = std::string(tag) + " eigenvalue #" + std::to_string(i) + " radius " + std::to_string(l);
            break;
          }
        }
      }
      if (o.pns && !nonsingular(to.sys, shifted, setup, from.mass_of_other).nonsingular) {
        o.pns = false;
        o.pns_witness = std::string(tag) + " eigenvalue #" + std::to_string(i);
      }
    }
  };
  // B'' is tested at E - lambda' with mass m_{N'}, B' at E - lambda'' with m_{N''}.
  check(a, b, "H'");
  check(b, a, "H''");
  return o;
}

BallClassification classify(const Model& model, const MultiBall& ball, double E, const MsaSetup& setup,
                            const ClassifyOptions& opts) {
  const int N = ball.particles();
  require(N >= 1 && N <= setup.params.N_star, "classify: particle number must lie in 1..N*");
  BallClassification c;
  BallSystem sys = make_ball_system(model, ball, setup.volume_budget);
  c.spectral_distance = spectral_distance(sys.spectrum.eigenvalues, E);
  c.resonance_threshold = resonance_threshold(setup.params.beta, ball.radius);
  c.resonant = c.spectral_distance < c.resonance_threshold;
  c.ns = nonsingular(sys, E, setup, setup.mass.mass(N));
  Interactivity inter;
  if (N >= 2) {
    inter = classify_interactivity(*model.graph, ball);
    c.weakly_interactive = inter.weakly_interactive;
  }
  if (!opts.compound) return c;
  const int k = setup.schedule.index_of(ball.radius);
  if (k >= 1) {
    c.cnr = completely_nonresonant(model, ball.center, k, E, setup);
    c.good = is_good(model, ball.center, k, E, setup);
    if (inter.weakly_interactive && inter.split) c.wi = classify_wi(model, ball, *inter.split, E, setup);
  }
  return c;
}

}  // namespace mpmsa
