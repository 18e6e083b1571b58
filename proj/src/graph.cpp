#include "mpmsa/graph.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <numeric>

namespace mpmsa {

Graph::Graph(std::string id, int n, const std::vector<std::pair<Vertex, Vertex>>& edges,
             int vertex_budget)
    : id_(std::move(id)), n_(n), adj_(n) {
  if (n < 1) throw ConfigError("graph must have at least one vertex");
  if (n > vertex_budget || n > 65535)
    throw BudgetExceeded("graph " + id_ + " has " + std::to_string(n) +
                         " vertices, budget is " + std::to_string(vertex_budget));
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw ConfigError("edge endpoint out of range");
    if (a == b) throw ConfigError("self-loops are not allowed");
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    max_degree_ = std::max(max_degree_, static_cast<int>(nb.size()));
  }

  constexpr std::uint16_t unreached = 0xFFFF;
  dist_.assign(static_cast<std::size_t>(n) * n, unreached);
  std::vector<Vertex> queue(n);
  for (Vertex s = 0; s < n; ++s) {
    std::uint16_t* row = dist_.data() + static_cast<std::size_t>(s) * n;
    std::size_t head = 0, tail = 0;
    row[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      Vertex v = queue[head++];
      for (Vertex w : adj_[v]) {
        if (row[w] == unreached) {
          row[w] = static_cast<std::uint16_t>(row[v] + 1);
          queue[tail++] = w;
        }
      }
    }
    if (static_cast<int>(tail) != n) throw ConfigError("graph " + id_ + " is not connected");
    diameter_ = std::max<int>(diameter_, row[queue[tail - 1]]);
  }
}

std::vector<Vertex> Graph::ball(Vertex x, int L) const {
  std::vector<Vertex> out;
  for (Vertex y = 0; y < n_; ++y)
    if (dist(x, y) <= L) out.push_back(y);
  return out;
}

Graph make_path(int n) {
  if (n < 2) throw ConfigError("path needs n >= 2");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph("path:" + std::to_string(n), n, e);
}

Graph make_cycle(int n) {
  if (n < 3) throw ConfigError("cycle needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph("cycle:" + std::to_string(n), n, e);
}

Graph make_grid(int w, int h) {
  if (w < 2 || h < 2) throw ConfigError("grid needs w, h >= 2");
  if (static_cast<long long>(w) * h > default_vertex_budget * 100LL)
    throw BudgetExceeded("grid too large");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      int v = x + w * y;
      if (x + 1 < w) e.emplace_back(v, v + 1);
      if (y + 1 < h) e.emplace_back(v, v + w);
    }
  return Graph("grid:" + std::to_string(w) + "x" + std::to_string(h), w * h, e);
}

Graph make_tree(int branching, int depth) {
  if (branching < 2 || depth < 1) throw ConfigError("tree needs branching >= 2, depth >= 1");
  long long n = 1, level = 1;
  for (int k = 0; k < depth; ++k) {
    level *= branching;
    n += level;
    if (n > 1000000) throw BudgetExceeded("tree too large");
  }
  std::vector<std::pair<Vertex, Vertex>> e;
  for (long long v = 1; v < n; ++v) e.emplace_back(static_cast<Vertex>((v - 1) / branching), static_cast<Vertex>(v));
  return Graph("tree:" + std::to_string(branching) + "x" + std::to_string(depth), static_cast<int>(n), e);
}

namespace {

int parse_int(const std::string& s, const std::string& spec) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError("malformed graph spec '" + spec + "'");
  return v;
}

std::pair<int, int> parse_pair(const std::string& s, const std::string& spec) {
  auto x = s.find('x');
  if (x == std::string::npos) throw ConfigError("malformed graph spec '" + spec + "'");
  return {parse_int(s.substr(0, x), spec), parse_int(s.substr(x + 1), spec)};
}

}  // namespace

Graph build_graph(const std::string& spec, int vertex_budget) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("malformed graph spec '" + spec + "'");
  std::string family = spec.substr(0, colon), args = spec.substr(colon + 1);
  auto check = [&](long long n) {
    if (n > vertex_budget)
      throw BudgetExceeded("graph " + spec + " has " + std::to_string(n) +
                           " vertices, budget is " + std::to_string(vertex_budget));
  };
  if (family == "path") {
    int n = parse_int(args, spec);
    check(n);
    return make_path(n);
  }
  if (family == "cycle") {
    int n = parse_int(args, spec);
    check(n);
    return make_cycle(n);
  }
  if (family == "grid") {
    auto [w, h] = parse_pair(args, spec);
    check(static_cast<long long>(w) * h);
    return make_grid(w, h);
  }
  if (family == "tree") {
    auto [b, depth] = parse_pair(args, spec);
    Graph g = make_tree(b, depth);
    check(g.size());
    return g;
  }
  throw ConfigError("unknown graph family '" + family + "'");
}

GrowthCertificate certify_growth(const Graph& g, double d, int Lmax) {
  require(d > 0 && Lmax >= 1, "certify_growth: need d > 0 and Lmax >= 1");
  double C = 0;
  std::vector<int> hist;
  for (Vertex x = 0; x < g.size(); ++x) {
    hist.assign(Lmax + 1, 0);
    for (Vertex y = 0; y < g.size(); ++y) {
      int r = g.dist(x, y);
      if (r <= Lmax) ++hist[r];
    }
    int count = hist[0];
    for (int L = 1; L <= Lmax; ++L) {
      count += hist[L];
      C = std::max(C, count / std::pow(static_cast<double>(L), d));
    }
  }
  return {d, C, Lmax};
}

double default_growth_exponent(const Graph& g) {
  const std::string& id = g.id();
  if (id.rfind("path", 0) == 0 || id.rfind("cycle", 0) == 0) return 1.0;
  return 2.0;
}

int rho(const Graph& g, const Configuration& x, const Configuration& y) {
  require(x.size() == y.size(), "rho: configurations differ in particle number");
  int r = 0;
  for (std::size_t j = 0; j < x.size(); ++j) r = std::max(r, g.dist(x[j], y[j]));
  return r;
}

int rho_s(const Graph& g, const Configuration& x, const Configuration& y) {
  require(x.size() == y.size(), "rho_s: configurations differ in particle number");
  std::vector<int> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  int best = INT_MAX;
  do {
    int r = 0;
    for (std::size_t j = 0; j < x.size() && r < best; ++j) r = std::max(r, g.dist(x[j], y[perm[j]]));
    best = std::min(best, r);
  } while (best > 0 && std::next_permutation(perm.begin(), perm.end()));
  return best;
}

int product_degree(const Graph& g, const Configuration& x) {
  int n = 0;
  for (Vertex v : x) n += g.degree(v);
  return n;
}

VolumeIndex::VolumeIndex(const Graph& g, std::vector<Configuration> configs)
    : configs_(std::move(configs)), base_(static_cast<std::uint64_t>(g.size())) {
  require(!configs_.empty(), "VolumeIndex: empty volume");
  n_particles_ = static_cast<int>(configs_.front().size());
  require(n_particles_ >= 1, "VolumeIndex: configurations need at least one particle");
  double span = std::pow(static_cast<double>(base_), n_particles_);
  require(span < 9.0e18, "VolumeIndex: configuration space too large to index");
  for (const auto& c : configs_) {
    require(static_cast<int>(c.size()) == n_particles_, "VolumeIndex: mixed particle numbers");
    for (Vertex v : c) require(v >= 0 && v < g.size(), "VolumeIndex: vertex out of range");
  }
  std::sort(configs_.begin(), configs_.end());
  configs_.erase(std::unique(configs_.begin(), configs_.end()), configs_.end());
  lookup_.reserve(configs_.size() * 2);
  for (int i = 0; i < size(); ++i) lookup_.emplace(key(configs_[i]), i);
}

std::uint64_t VolumeIndex::key(const Configuration& x) const {
  std::uint64_t k = 0;
  for (Vertex v : x) k = k * base_ + static_cast<std::uint64_t>(v);
  return k;
}

int VolumeIndex::find(const Configuration& x) const {
  if (static_cast<int>(x.size()) != n_particles_) return -1;
  for (Vertex v : x)
    if (v < 0 || static_cast<std::uint64_t>(v) >= base_) return -1;
  auto it = lookup_.find(key(x));
  return it == lookup_.end() ? -1 : it->second;
}

namespace {

std::vector<Configuration> cartesian(const std::vector<std::vector<Vertex>>& factors) {
  std::vector<Configuration> out;
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.size();
  out.reserve(total);
  std::vector<std::size_t> idx(factors.size(), 0);
  Configuration c(factors.size());
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t j = 0; j < factors.size(); ++j) c[j] = factors[j][idx[j]];
    out.push_back(c);
    for (std::size_t j = factors.size(); j-- > 0;) {
      if (++idx[j] < factors[j].size()) break;
      idx[j] = 0;
    }
  }
  return out;
}

}  // namespace

VolumeIndex full_volume(const Graph& g, int N) {
  require(N >= 1, "full_volume: N >= 1");
  std::vector<Vertex> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  return VolumeIndex(g, cartesian(std::vector<std::vector<Vertex>>(N, all)));
}

std::size_t MultiBall::size() const {
  std::size_t n = 1;
  for (const auto& f : factors) n *= f.size();
  return n;
}

std::vector<Configuration> MultiBall::members() const { return cartesian(factors); }

MultiBall make_ball(const Graph& g, const Configuration& center, int L) {
  require(!center.empty(), "make_ball: empty configuration");
  require(L >= 0, "make_ball: negative radius");
  MultiBall b;
  b.center = center;
  b.radius = L;
  for (Vertex v : center) b.factors.push_back(g.ball(v, L));
  return b;
}

VolumeIndex ball_volume(const Graph& g, const MultiBall& ball) {
  return VolumeIndex(g, ball.members());
}

bool ball_contains(const Graph& g, const MultiBall& outer, const Configuration& center, int r) {
  require(center.size() == outer.center.size(), "ball_contains: particle number mismatch");
  for (std::size_t j = 0; j < center.size(); ++j)
    for (Vertex w : g.ball(center[j], r))
      if (g.dist(outer.center[j], w) > outer.radius) return false;
  return true;
}

std::vector<int> inner_boundary(const Graph& g, const VolumeIndex& V) {
  std::vector<int> out;
  for (int i = 0; i < V.size(); ++i) {
    bool hit = false;
    for_each_neighbor(g, V[i], [&](const Configuration& y) {
      if (!hit && !V.contains(y)) hit = true;
    });
    if (hit) out.push_back(i);
  }
  return out;
}

Boundaries boundaries(const Graph& g, const VolumeIndex& V, const VolumeIndex& W) {
  Boundaries b;
  b.inner = inner_boundary(g, V);
  for (const auto& u : W.configurations()) {
    int iu = V.find(u);
    require(iu >= 0, "boundaries: W must be a subset of V");
    for_each_neighbor(g, u, [&](const Configuration& v) {
      int iv = V.find(v);
      if (iv >= 0 && !W.contains(v)) b.edges.emplace_back(iu, iv);
    });
  }
  std::sort(b.edges.begin(), b.edges.end());
  return b;
}

int set_distance(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  int d = INT_MAX;
  for (Vertex x : a)
    for (Vertex y : b) d = std::min(d, g.dist(x, y));
  return d;
}

int set_diameter(const Graph& g, const std::vector<Vertex>& a) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) d = std::max(d, g.dist(a[i], a[j]));
  return d;
}

namespace {

std::vector<Vertex> union_of_balls(const Graph& g, const Configuration& x, const std::vector<int>& J,
                                   int L) {
  std::vector<char> mark(g.size(), 0);
  for (int j : J)
    for (Vertex v = 0; v < g.size(); ++v)
      if (g.dist(x[j], v) <= L) mark[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.size(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

}  // namespace

Supports supports(const Graph& g, const Configuration& x, const std::vector<int>& J, int L) {
  for (int j : J) require(j >= 0 && j < static_cast<int>(x.size()), "supports: particle index out of range");
  std::vector<int> all(x.size());
  std::iota(all.begin(), all.end(), 0);
  Supports s;
  s.proj_x = union_of_balls(g, x, all, 0);
  s.proj_J_x = union_of_balls(g, x, J, 0);
  s.proj_ball = union_of_balls(g, x, all, L);
  s.proj_J_ball = union_of_balls(g, x, J, L);
  s.diam = set_diameter(g, s.proj_x);
  return s;
}

Interactivity classify_interactivity(const Graph& g, const MultiBall& ball) {
  const int N = ball.particles();
  const int L = ball.radius;
  require(N >= 2, "classify_interactivity: needs N >= 2");
  Interactivity out;
  if (set_diameter(g, supports(g, ball.center, {}, 0).proj_x) <= 3 * N * L) return out;
  out.weakly_interactive = true;

  // Admissible J are unions of clusters of particles linked at distance <= 3L; scan all
  // J containing particle 0 and keep the lexicographically smallest admissible one.
  for (unsigned mask = 0; mask + 1 < (1u << (N - 1)); ++mask) {
    CanonicalSplit s;
    s.J.push_back(0);
    for (int j = 1; j < N; ++j) (mask >> (j - 1) & 1u ? s.J : s.Jc).push_back(j);
    s.distance = set_distance(g, union_of_balls(g, ball.center, s.J, L),
                              union_of_balls(g, ball.center, s.Jc, L));
    if (s.distance > L && (!out.split || s.J < out.split->J)) out.split = s;
  }
  return out;
}

namespace {

// Particles of x whose L-balls lie inside B, or nullopt if some L-ball straddles B.
std::optional<std::vector<int>> inside_particles(const Graph& g, const Configuration& x, int L,
                                                 const std::vector<char>& in_B) {
  std::vector<int> J;
  for (std::size_t j = 0; j < x.size(); ++j) {
    int in = 0, out = 0;
    for (Vertex v = 0; v < g.size(); ++v)
      if (g.dist(x[j], v) <= L) (in_B[v] ? in : out)++;
    if (in > 0 && out > 0) return std::nullopt;
    if (out == 0) J.push_back(static_cast<int>(j));
  }
  return J;
}

}  // namespace

std::optional<SeparationCertificate> weak_separation(const Graph& g, const MultiBall& ballx,
                                                     const MultiBall& bally) {
  require(ballx.particles() == bally.particles(), "weak_separation: particle number mismatch");
  require(ballx.radius == bally.radius, "weak_separation: radius mismatch");
  const int N = ballx.particles();
  const int L = ballx.radius;
  std::vector<char> in_B(g.size());
  for (Vertex c = 0; c < g.size(); ++c) {
    for (int r = 0;; ++r) {
      std::vector<Vertex> B = g.ball(c, r);
      if (set_diameter(g, B) > 2 * N * L) break;
      std::fill(in_B.begin(), in_B.end(), 0);
      for (Vertex v : B) in_B[v] = 1;
      auto jx = inside_particles(g, ballx.center, L, in_B);
      auto jy = inside_particles(g, bally.center, L, in_B);
      if (jx && jy) {
        if (jx->size() > jy->size()) return SeparationCertificate{c, r, B, *jx, *jy, false};
        if (jy->size() > jx->size()) return SeparationCertificate{c, r, B, *jy, *jx, true};
      }
      if (static_cast<int>(B.size()) == g.size()) break;
    }
  }
  return std::nullopt;
}

}  // namespace mpmsa
