#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ranges>
#include <vector>

#include "rcut/dist.hpp"
#include "rcut/graph.hpp"
#include "rcut/rng.hpp"

namespace rcut::testing {

// Same graph with vertex v renamed to perm[v].
inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (auto [u, v] : g.edges()) {
    Vertex a = perm[u], b = perm[v];
    if (a > b) std::swap(a, b);
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(g.n(), edges, g.provenance());
}

inline std::vector<Vertex> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  Rng rng(seed);
  rng.shuffle(p.begin(), p.end());
  return p;
}

inline Dist random_dist(std::size_t n, Rng& rng) {
  std::vector<double> m(n);
  double total = 0.0;
  for (double& x : m) total += (x = rng.exponential());
  for (double& x : m) x /= total;
  return Dist(std::move(m));
}

inline bool same_mass(const Dist& a, const Dist& b) {
  return std::ranges::equal(a.mass(), b.mass());
}

// max over all subsets A of |nu(A) - eta(A)|.
inline double brute_force_tv(const Dist& nu, const Dist& eta) {
  const std::size_t n = nu.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double diff = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (mask >> x & 1) diff += nu[x] - eta[x];
    }
    best = std::max(best, std::abs(diff));
  }
  return best;
}

inline std::vector<std::vector<int>> adjacency_matrix(const Graph& g) {
  std::vector<std::vector<int>> a(g.n(), std::vector<int>(g.n(), 0));
  for (Vertex v = 0; v < g.n(); ++v) {
    for (Vertex w : g.neighbors(v)) ++a[v][w];
  }
  return a;
}

}  // namespace rcut::testing
