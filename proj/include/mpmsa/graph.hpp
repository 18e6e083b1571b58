#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mpmsa/types.hpp"

namespace mpmsa {

inline constexpr int default_vertex_budget = 5000;

// Finite connected simple graph with a dense all-pairs distance table.
class Graph {
 public:
  Graph(std::string id, int n, const std::vector<std::pair<Vertex, Vertex>>& edges,
        int vertex_budget = default_vertex_budget);

  const std::string& id() const { return id_; }
  int size() const { return n_; }
  const std::vector<Vertex>& neighbors(Vertex x) const { return adj_[x]; }
  int degree(Vertex x) const { return static_cast<int>(adj_[x].size()); }
  int max_degree() const { return max_degree_; }
  int diameter() const { return diameter_; }
  int dist(Vertex x, Vertex y) const { return dist_[static_cast<std::size_t>(x) * n_ + y]; }

  // B(x, L) in ascending vertex order.
  std::vector<Vertex> ball(Vertex x, int L) const;

 private:
  std::string id_;
  int n_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint16_t> dist_;
  int max_degree_ = 0;
  int diameter_ = 0;
};

Graph make_path(int n);
Graph make_cycle(int n);
Graph make_grid(int w, int h);
Graph make_tree(int branching, int depth);

// "path:5", "cycle:6", "grid:9x9", "tree:2x4".
Graph build_graph(const std::string& spec, int vertex_budget = default_vertex_budget);

struct GrowthCertificate {
  double d;
  double C;
  int Lmax;
};

// Smallest C with #B(x,L) <= C L^d for all x and 1 <= L <= Lmax.
GrowthCertificate certify_growth(const Graph& g, double d, int Lmax);

// Default growth exponent by family: 1 for paths and cycles, 2 for grids and trees.
double default_growth_exponent(const Graph& g);

using Configuration = std::vector<Vertex>;

int rho(const Graph& g, const Configuration& x, const Configuration& y);
int rho_s(const Graph& g, const Configuration& x, const Configuration& y);

// Calls f(y) for every product-graph neighbour y of x (one coordinate moves along an edge).
template <typename F>
void for_each_neighbor(const Graph& g, const Configuration& x, F&& f) {
  Configuration y = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (Vertex v : g.neighbors(x[j])) {
      y[j] = v;
      f(static_cast<const Configuration&>(y));
    }
    y[j] = x[j];
  }
}

// Full product-graph degree n(x) = sum_j deg(x_j).
int product_degree(const Graph& g, const Configuration& x);

// Finite set of configurations enumerated in lexicographic order.
class VolumeIndex {
 public:
  VolumeIndex() = default;
  VolumeIndex(const Graph& g, std::vector<Configuration> configs);

  int size() const { return static_cast<int>(configs_.size()); }
  int particles() const { return n_particles_; }
  const Configuration& operator[](int i) const { return configs_[i]; }
  const std::vector<Configuration>& configurations() const { return configs_; }
  // Row index of x, or -1 when x is not in the volume.
  int find(const Configuration& x) const;
  bool contains(const Configuration& x) const { return find(x) >= 0; }

 private:
  std::uint64_t key(const Configuration& x) const;

  std::vector<Configuration> configs_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::uint64_t base_ = 0;
  int n_particles_ = 0;
};

VolumeIndex full_volume(const Graph& g, int N);

struct MultiBall {
  Configuration center;
  int radius = 0;
  std::vector<std::vector<Vertex>> factors;  // B(x_j, L) per particle

  int particles() const { return static_cast<int>(center.size()); }
  std::size_t size() const;
  std::vector<Configuration> members() const;  // lexicographic Cartesian product
};

MultiBall make_ball(const Graph& g, const Configuration& center, int L);
VolumeIndex ball_volume(const Graph& g, const MultiBall& ball);
// B(v, r) inside B(u, R), coordinatewise.
bool ball_contains(const Graph& g, const MultiBall& outer, const Configuration& center, int r);

struct Boundaries {
  std::vector<int> inner;                   // indices into V
  std::vector<std::pair<int, int>> edges;   // (u, v) indices into V, u in W, v in V \ W
};

// Inner boundary of V and edge boundary of W in V, for the product-graph edge relation.
Boundaries boundaries(const Graph& g, const VolumeIndex& V, const VolumeIndex& W);
std::vector<int> inner_boundary(const Graph& g, const VolumeIndex& V);

struct Supports {
  std::vector<Vertex> proj_x;
  std::vector<Vertex> proj_J_x;
  std::vector<Vertex> proj_ball;
  std::vector<Vertex> proj_J_ball;
  int diam = 0;
};

// Particle indices in J are 0-based.
Supports supports(const Graph& g, const Configuration& x, const std::vector<int>& J, int L);

int set_distance(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b);
int set_diameter(const Graph& g, const std::vector<Vertex>& a);

struct CanonicalSplit {
  std::vector<int> J;   // 0-based, contains particle 0
  std::vector<int> Jc;
  int distance = 0;     // d(Pi_J B, Pi_Jc B)
};

struct Interactivity {
  bool weakly_interactive = false;
  std::optional<CanonicalSplit> split;
};

Interactivity classify_interactivity(const Graph& g, const MultiBall& ball);

struct SeparationCertificate {
  Vertex center = 0;
  int radius = 0;
  std::vector<Vertex> ball;  // the single-particle ball B
  std::vector<int> J1;       // particles of the separated ball inside B
  std::vector<int> J2;       // particles of the other ball inside B
  bool reversed = false;     // true when bally is separated from ballx
};

std::optional<SeparationCertificate> weak_separation(const Graph& g, const MultiBall& ballx,
                                                     const MultiBall& bally);

}  // namespace mpmsa
