#include "mpmsa/dominated_decay.hpp"

#include <algorithm>
#include <cmath>

namespace mpmsa {

void validate(const DominationContext& ctx) {
  require(ctx.graph != nullptr, "domination: missing graph");
  require(ctx.ell >= 0 && ctx.ell <= ctx.L, "domination: need 0 <= ell <= L");
  require(ctx.q > 0 && ctx.q < 1, "domination: q must lie in (0,1)");
  require(static_cast<int>(ctx.f.size()) == ctx.volume.size(), "domination: f does not match the volume");
  require(ctx.xi.empty() || static_cast<int>(ctx.xi.size()) == ctx.volume.size(),
          "domination: Xi does not match the volume");
  for (double v : ctx.f) require(std::isfinite(v) && v >= 0, "domination: f must be finite and nonnegative");
  require(ctx.volume.contains(ctx.u), "domination: center outside the volume");
}

double sup_over_ball(const DominationContext& ctx, const Configuration& center, int r) {
  double m = 0;
  for (int i = 0; i < ctx.volume.size(); ++i)
    if (rho(*ctx.graph, center, ctx.volume[i]) <= r) m = std::max(m, ctx.f[i]);
  return m;
}

RegularPartition regular_set(const DominationContext& ctx) {
  validate(ctx);
  const Graph& g = *ctx.graph;
  const int n = ctx.volume.size();
  const int outer = ctx.L - ctx.ell;
  RegularPartition p;
  p.in_scope.assign(n, 0);
  p.regular.assign(n, 0);
  p.layer_regular.assign(outer + 1, 1);
  for (int i = 0; i < n; ++i) {
    const int r = rho(g, ctx.u, ctx.volume[i]);
    if (r > outer) continue;
    p.in_scope[i] = 1;
    // f = 0 is regular: 0 <= q M always holds.
    p.regular[i] = ctx.f[i] <= ctx.q * sup_over_ball(ctx, ctx.volume[i], ctx.ell + 1);
    (p.regular[i] ? p.regular_points : p.singular_points).push_back(i);
    if (!p.regular[i]) p.layer_regular[r] = 0;
  }
  return p;
}

std::optional<int> radius_function(const DominationContext& ctx, const RegularPartition& part, int x) {
  require(x >= 0 && x < ctx.volume.size() && part.in_scope[x], "radius_function: point outside B(u, L - ell)");
  const int r0 = rho(*ctx.graph, ctx.u, ctx.volume[x]);
  for (int r = r0; r < static_cast<int>(part.layer_regular.size()); ++r)
    if (part.layer_regular[r]) return r + ctx.ell;
  return std::nullopt;
}

DominationStatus is_dominated(const DominationContext& ctx) {
  const RegularPartition part = regular_set(ctx);
  DominationStatus s;
  for (int i : part.singular_points)
    if (ctx.xi.empty() || !ctx.xi[i]) {
      s.reason = "singular point outside Xi";
      s.witness = i;
      return s;
    }
  for (int i = 0; i < ctx.volume.size(); ++i) {
    if (!part.in_scope[i]) continue;
    const std::optional<int> R = radius_function(ctx, part, i);
    if (R && !(ctx.f[i] <= ctx.q * sup_over_ball(ctx, ctx.u, *R))) {
      s.reason = "f(x) > q M(f, B(u, R_f(x)))";
      s.witness = i;
      return s;
    }
  }
  s.dominated = true;
  return s;
}

std::vector<Annulus> covering_annuli(const DominationContext& ctx) {
  std::vector<char> hit(ctx.L + 2, 0);
  for (int i = 0; i < static_cast<int>(ctx.xi.size()); ++i)
    if (ctx.xi[i]) {
      const int r = rho(*ctx.graph, ctx.u, ctx.volume[i]);
      if (r <= ctx.L + 1) hit[r] = 1;
    }
  std::vector<Annulus> out;
  for (int r = 0; r < static_cast<int>(hit.size()); ++r) {
    if (!hit[r]) continue;
    if (!out.empty() && out.back().b == r - 1)
      out.back().b = r;
    else
      out.push_back({r, r});
  }
  return out;
}

DominationBound domination_bound(const DominationContext& ctx, const std::vector<Annulus>& annuli) {
  DominationBound b;
  const DominationStatus st = is_dominated(ctx);
  if (!st.dominated) {
    b.reason = "not dominated: " + st.reason;
    return b;
  }
  b.dominated = true;
  for (const Annulus& A : annuli) {
    require(A.a <= A.b, "domination_bound: annulus with a > b");
    b.w += A.b - A.a + 1;
  }
  for (int i = 0; i < static_cast<int>(ctx.xi.size()); ++i) {
    if (!ctx.xi[i]) continue;
    const int r = rho(*ctx.graph, ctx.u, ctx.volume[i]);
    const bool covered = std::any_of(annuli.begin(), annuli.end(), [r](const Annulus& A) { return r >= A.a && r <= A.b; });
    if (!covered) {
      b.reason = "annuli do not cover Xi";
      return b;
    }
  }
  if (b.w > ctx.L - ctx.ell) {
    b.reason = "annulus width exceeds L - ell";
    return b;
  }
  b.applicable = true;
  b.W = static_cast<double>(ctx.L + 1 - b.w) / (ctx.ell + 1);
  b.M = sup_over_ball(ctx, ctx.u, ctx.L + 1);
  b.f_u = ctx.f[ctx.volume.find(ctx.u)];
  b.bound_floor = std::pow(ctx.q, std::floor(b.W)) * b.M;
  b.bound_W = std::pow(ctx.q, b.W) * b.M;
  b.holds = b.f_u <= b.bound_floor;
  b.holds_W = b.f_u <= b.bound_W;
  return b;
}

GfDominationReport gf_domination_check(const Model& model, const Configuration& u, int L, double E, int ell,
                                       const std::vector<Configuration>& xi, double beta, double delta, double m,
                                       const GrowthCertificate& growth, int volume_budget) {
  require(L >= 1 && ell >= 1 && ell < L, "gf_domination_check: need 1 <= ell < L");
  require(beta > 0 && beta <= 1 && delta > 0 && delta <= 1 && m > 0, "gf_domination_check: parameters out of range");
  const Graph& g = *model.graph;
  const int N = static_cast<int>(u.size());
  GfDominationReport r;
  const double Lb = std::pow(static_cast<double>(L), beta);
  const double ld = std::pow(static_cast<double>(ell), delta);
  r.m_prime = m - 2 * Lb / ld;
  r.q = std::exp(-r.m_prime * ld);
  r.log_condition = 2 * Lb > Lb + std::log(growth.C * std::pow(static_cast<double>(L), N * growth.d));
  if (!(m * ld > 2 * Lb)) r.violations.push_back("m*ell^delta > 2*L^beta");

  const MultiBall ball = make_ball(g, u, L);
  const BallSystem sys = make_ball_system(model, ball, volume_budget);
  const VolumeIndex& V = sys.volume;

  // Complete non-resonance at every concentric radius ell..L.
  for (int rad = ell; rad <= L; ++rad) {
    const VectorXd ev = eigenvalues_only(assemble(model, ball_volume(g, make_ball(g, u, rad)), "", volume_budget).matrix);
    if (spectral_distance(ev, E) < resonance_threshold(beta, rad)) {
      r.violations.push_back("CNR at radius " + std::to_string(rad));
      break;
    }
  }
  // Every B(x, ell) inside B(u, L-ell-1) and disjoint from Xi is NS.
  const double ns_thr = std::exp(-m * ld);
  const MultiBall inner = make_ball(g, u, L - ell - 1);
  if (L - ell - 1 >= ell) {
    for (const Configuration& x : inner.members()) {
      if (!ball_contains(g, inner, x, ell)) continue;
      bool meets_xi = false;
      for (const Configuration& z : xi) meets_xi = meets_xi || rho(g, x, z) <= ell;
      if (meets_xi) continue;
      const BallSystem sub = make_ball_system(model, make_ball(g, x, ell), volume_budget);
      double F = INFINITY;
      try {
        F = sub.boundary.empty() ? 0 : boundary_functional(sub, E, growth);
      } catch (const ResonanceError&) {
      }
      if (!(F <= ns_thr)) {
        r.violations.push_back("NS of B(x,ell) outside Xi");
        break;
      }
    }
  }
  r.applicable = r.violations.empty();
  if (!r.applicable) return r;

  std::vector<char> xi_mask(V.size(), 0);
  for (const Configuration& x : xi) {
    const int i = V.find(x);
    if (i >= 0) xi_mask[i] = 1;
  }
  r.boundary_points = static_cast<int>(sys.boundary.size());
  for (int y : sys.boundary) {
    DominationContext ctx{&g, u, L, ell, r.q, V, std::vector<double>(V.size()), xi_mask};
    const VectorXd col = green_row(sys.spectrum, E, y);
    for (int i = 0; i < V.size(); ++i) ctx.f[i] = std::fabs(col(i));
    DominationBound b = domination_bound(ctx, covering_annuli(ctx));
    r.dominated_count += b.dominated;
    r.applicable_count += b.applicable;
    r.holds_count += b.applicable && b.holds;
    r.bounds.push_back(b);
  }
  r.dominated = r.dominated_count == r.boundary_points;
  return r;
}

}  // namespace mpmsa
