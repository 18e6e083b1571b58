#include <catch_amalgamated.hpp>

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>

#include "mpmsa/disorder.hpp"
#include "mpmsa/graph.hpp"

using namespace mpmsa;

namespace {

// Brute force: minimize max_j d(x_j, y_pi(j)) over all permutations.
int rho_s_oracle(const Graph& g, Configuration x, const Configuration& y) {
  std::vector<int> p(x.size());
  std::iota(p.begin(), p.end(), 0);
  int best = INT_MAX;
  do {
    int m = 0;
    for (std::size_t j = 0; j < x.size(); ++j) m = std::max(m, g.dist(x[j], y[p[j]]));
    best = std::min(best, m);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

Configuration random_configuration(const Graph& g, int N, std::uint64_t seed) {
  Configuration x(N);
  for (int j = 0; j < N; ++j) x[j] = static_cast<Vertex>(mix(seed, j) % g.size());
  return x;
}

}  // namespace

TEST_CASE("graph distances", "[graph]") {
  REQUIRE(make_path(5).dist(0, 4) == 4);
  REQUIRE(make_cycle(6).dist(0, 4) == 2);
  const Graph grid = make_grid(4, 3);
  for (Vertex x = 0; x < grid.size(); ++x) REQUIRE(grid.dist(x, x) == 0);
  REQUIRE(grid.dist(0, 11) == 5);
  const Graph tree = make_tree(2, 3);
  REQUIRE(tree.size() == 15);
  REQUIRE(tree.dist(7, 14) == 6);
}

TEST_CASE("graph specs", "[graph]") {
  REQUIRE(build_graph("path:5").size() == 5);
  REQUIRE(build_graph("cycle:6").size() == 6);
  REQUIRE(build_graph("grid:9x9").size() == 81);
  REQUIRE(build_graph("tree:2x4").size() == 31);
  REQUIRE_THROWS_AS(build_graph("path:x"), ConfigError);
  REQUIRE_THROWS_AS(build_graph("moebius:4"), ConfigError);
  REQUIRE_THROWS_AS(build_graph("path:100", 50), BudgetExceeded);
  REQUIRE_THROWS_AS(Graph("split", 4, {{0, 1}, {2, 3}}), ConfigError);
}

TEST_CASE("growth certificates", "[graph]") {
  REQUIRE(certify_growth(make_path(100), 1, 10).C == Catch::Approx(3));
  REQUIRE(certify_growth(make_path(5), 1, 1).C == Catch::Approx(3));

  // grid(9,9), d = 2, Lmax = 4: exhaustive count of every ball.
  const Graph g = make_grid(9, 9);
  double C = 0;
  for (Vertex x = 0; x < g.size(); ++x)
    for (int L = 1; L <= 4; ++L) {
      int n = 0;
      for (Vertex y = 0; y < g.size(); ++y) n += g.dist(x, y) <= L;
      C = std::max(C, n / double(L * L));
    }
  REQUIRE(certify_growth(g, 2, 4).C == Catch::Approx(C));
  REQUIRE(C == Catch::Approx(5));
}

TEST_CASE("max and symmetrized metrics", "[graph]") {
  const Graph g = make_path(6);
  REQUIRE(rho(g, {0, 5}, {5, 0}) == 5);
  REQUIRE(rho_s(g, {0, 5}, {5, 0}) == 0);
  REQUIRE(rho_s(g, {2, 3}, {2, 3}) == 0);

  const Graph c = make_cycle(11);
  for (int t = 0; t < 200; ++t) {
    const Configuration x = random_configuration(c, 3, mix(1, 3 * t));
    const Configuration y = random_configuration(c, 3, mix(1, 3 * t + 1));
    const Configuration z = random_configuration(c, 3, mix(1, 3 * t + 2));
    REQUIRE(rho_s(c, x, y) == rho_s_oracle(c, x, y));
    REQUIRE(rho_s(c, x, y) <= rho(c, x, y));
    REQUIRE(rho_s(c, x, y) == rho_s(c, y, x));
    REQUIRE(rho_s(c, x, z) <= rho_s(c, x, y) + rho_s(c, y, z));
    REQUIRE(rho(c, x, z) <= rho(c, x, y) + rho(c, y, z));
    Configuration px = x;
    std::reverse(px.begin(), px.end());
    REQUIRE(rho_s(c, x, px) == 0);
  }
}

TEST_CASE("product balls and volumes", "[graph]") {
  const Graph g = make_grid(5, 5);
  const MultiBall b = make_ball(g, {0, 12}, 2);
  REQUIRE(b.size() == g.ball(0, 2).size() * g.ball(12, 2).size());
  const VolumeIndex V = ball_volume(g, b);
  REQUIRE(V.size() == static_cast<int>(b.size()));
  for (int i = 0; i < V.size(); ++i) {
    REQUIRE(V.find(V[i]) == i);
    REQUIRE(rho(g, b.center, V[i]) <= 2);
    if (i) REQUIRE(V[i - 1] < V[i]);
  }
  REQUIRE(V.find({24, 24}) == -1);
  REQUIRE(full_volume(make_path(4), 2).size() == 16);
}

TEST_CASE("inner and edge boundaries", "[graph]") {
  const Graph p5 = make_path(5);
  REQUIRE(inner_boundary(p5, full_volume(p5, 2)).empty());

  const VolumeIndex V(p5, {{0}, {1}, {2}});
  const VolumeIndex W(p5, {{0}});
  const Boundaries bd = boundaries(p5, V, W);
  REQUIRE(bd.edges.size() == 1);
  REQUIRE(V[bd.edges[0].first] == Configuration{0});
  REQUIRE(V[bd.edges[0].second] == Configuration{1});
  REQUIRE(bd.inner == std::vector<int>{2});

  // N = 2: exhaustive scan over all pairs of configurations.
  const Graph g = make_path(7);
  const VolumeIndex V2 = ball_volume(g, make_ball(g, {3, 3}, 2));
  const VolumeIndex W2 = ball_volume(g, make_ball(g, {3, 2}, 1));
  std::set<std::pair<int, int>> oracle;
  for (int a = 0; a < V2.size(); ++a)
    for (int c = 0; c < V2.size(); ++c) {
      const Configuration &x = V2[a], &y = V2[c];
      const int moved = (x[0] != y[0]) + (x[1] != y[1]);
      const bool adjacent = moved == 1 && (g.dist(x[0], y[0]) + g.dist(x[1], y[1])) == 1;
      if (adjacent && W2.contains(x) && !W2.contains(y)) oracle.insert({a, c});
    }
  const Boundaries b2 = boundaries(g, V2, W2);
  REQUIRE(std::set<std::pair<int, int>>(b2.edges.begin(), b2.edges.end()) == oracle);
}

TEST_CASE("partial supports", "[graph]") {
  const Graph g = make_path(10);
  const Supports s = supports(g, {3, 3}, {0, 1}, 1);
  REQUIRE(s.proj_x == std::vector<Vertex>{3});
  REQUIRE(s.diam == 0);
  REQUIRE(supports(g, {3, 3}, {}, 1).proj_J_x.empty());
  REQUIRE(supports(g, {0, 4, 9}, {}, 0).diam == 9);
  const Supports t = supports(g, {0, 4, 9}, {1}, 1);
  REQUIRE(t.proj_J_ball == std::vector<Vertex>{3, 4, 5});
}

TEST_CASE("weak and strong interactivity", "[graph]") {
  const Graph g = make_path(30);
  const Interactivity wi = classify_interactivity(g, make_ball(g, {0, 20}, 2));
  REQUIRE(wi.weakly_interactive);
  REQUIRE(wi.split->J == std::vector<int>{0});
  REQUIRE(wi.split->Jc == std::vector<int>{1});
  REQUIRE(wi.split->distance == 16);
  REQUIRE_FALSE(classify_interactivity(g, make_ball(g, {0, 5}, 2)).weakly_interactive);

  const Graph g50 = make_path(50);
  const Interactivity w3 = classify_interactivity(g50, make_ball(g50, {0, 1, 40}, 2));
  REQUIRE(w3.weakly_interactive);
  REQUIRE(w3.split->J == std::vector<int>{0, 1});
  REQUIRE_THROWS_AS(classify_interactivity(g, make_ball(g, {4}, 1)), ContractViolation);
}

TEST_CASE("weak separation", "[graph]") {
  const Graph g = make_path(30);
  const MultiBall b = make_ball(g, {3, 9}, 1);
  REQUIRE_FALSE(weak_separation(g, b, b).has_value());

  const auto c1 = weak_separation(g, make_ball(g, {2}, 2), make_ball(g, {20}, 2));
  REQUIRE(c1.has_value());
  REQUIRE(c1->J1 == std::vector<int>{0});
  REQUIRE(c1->J2.empty());

  const auto c2 = weak_separation(g, make_ball(g, {2, 5}, 1), make_ball(g, {14, 20}, 1));
  REQUIRE(c2.has_value());
  REQUIRE(c2->J1.size() > c2->J2.size());
  REQUIRE(set_diameter(g, c2->ball) <= 2 * 2 * 1);
}
