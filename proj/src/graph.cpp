#include "rcut/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "rcut/error.hpp"

namespace rcut {

Graph::Graph(std::size_t n, std::size_t d, std::vector<Vertex> adjacency, Provenance provenance)
    : n_(n), d_(d), neighbors_(std::move(adjacency)), provenance_(std::move(provenance)) {
  if (n_ == 0) throw StructuralError("graph has no vertices");
  if (d_ == 0) throw StructuralError("graph degree must be positive");
  if (n_ > std::numeric_limits<Vertex>::max()) throw StructuralError("vertex count exceeds id range");
  if (neighbors_.size() != n_ * d_) {
    throw StructuralError("adjacency array has " + std::to_string(neighbors_.size()) + " entries, expected n*d = " +
                          std::to_string(n_ * d_));
  }
  for (std::size_t v = 0; v < n_; ++v) {
    const auto row = neighbors(static_cast<Vertex>(v));
    for (std::size_t i = 0; i < d_; ++i) {
      if (row[i] >= n_) {
        throw StructuralError("vertex " + std::to_string(v) + " has out-of-range neighbor " + std::to_string(row[i]));
      }
      if (i > 0 && row[i] < row[i - 1]) {
        throw StructuralError("neighbor list of vertex " + std::to_string(v) + " is not sorted");
      }
    }
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges, Provenance provenance) {
  std::vector<std::vector<Vertex>> rows(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw StructuralError("edge endpoint out of range");
    rows[u].push_back(v);
    rows[v].push_back(u);
  }
  const std::size_t d = n == 0 ? 0 : rows[0].size();
  std::vector<Vertex> flat;
  flat.reserve(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    if (rows[v].size() != d) {
      throw ValidationError("d_regular: vertex " + std::to_string(v) + " has degree " + std::to_string(rows[v].size()) +
                            ", vertex 0 has " + std::to_string(d));
    }
    std::sort(rows[v].begin(), rows[v].end());
    flat.insert(flat.end(), rows[v].begin(), rows[v].end());
  }
  return Graph(n, d, std::move(flat), std::move(provenance));
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  const auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(n_ * d_ / 2);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::with_provenance(Provenance provenance) const {
  Graph g = *this;
  g.provenance_ = std::move(provenance);
  return g;
}

std::string ValidationReport::first_failure() const {
  if (!degree_at_least_3) return "degree_at_least_3 (d >= 3 required)";
  if (!simple) return "simple";
  if (!d_regular) return "d_regular";
  if (!connected) return "connected";
  if (!non_bipartite) return "non_bipartite";
  return {};
}

ValidationReport validate(const Graph& graph) {
  ValidationReport report;
  const std::size_t n = graph.n();
  report.degree_at_least_3 = graph.d() >= 3;

  bool no_loops = true;
  bool distinct = true;
  bool symmetric = true;
  for (Vertex v = 0; v < n; ++v) {
    const auto row = graph.neighbors(v);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == v) no_loops = false;
      if (i > 0 && row[i] == row[i - 1]) distinct = false;
      if (!graph.has_edge(row[i], v)) symmetric = false;
    }
  }
  report.simple = no_loops && distinct && symmetric;
  // Rows have exactly d slots; with distinct entries that is d-regularity.
  report.d_regular = distinct;

  // BFS 2-coloring from vertex 0 settles both connectivity and bipartiteness.
  std::vector<int> color(n, -1);
  std::queue<Vertex> frontier;
  color[0] = 0;
  frontier.push(0);
  std::size_t reached = 1;
  bool two_colorable = true;
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (Vertex w : graph.neighbors(u)) {
      if (color[w] < 0) {
        color[w] = 1 - color[u];
        ++reached;
        frontier.push(w);
      } else if (color[w] == color[u]) {
        two_colorable = false;
      }
    }
  }
  report.connected = reached == n;
  report.non_bipartite = !two_colorable;
  return report;
}

void require_admissible(const Graph& graph) {
  const auto report = validate(graph);
  if (!report.admissible()) throw ValidationError("graph is not admissible: " + report.first_failure());
}

void apply_normalized_adjacency(const Graph& graph, std::span<const double> in, std::span<double> out) {
  const std::size_t n = graph.n();
  if (in.size() != n || out.size() != n) throw ValidationError("dimension mismatch in operator application");
  const double inv_d = 1.0 / static_cast<double>(graph.d());
  const auto adj = graph.adjacency();
  const std::size_t d = graph.d();
  for (std::size_t x = 0; x < n; ++x) {
    double acc = 0.0;
    const Vertex* row = adj.data() + x * d;
    for (std::size_t i = 0; i < d; ++i) acc += in[row[i]];
    out[x] = acc * inv_d;
  }
}

Dist apply_P(const Graph& graph, const Dist& nu) {
  if (nu.size() != graph.n()) throw ValidationError("dimension mismatch: distribution size " + std::to_string(nu.size()) +
                                                    " vs " + std::to_string(graph.n()) + " vertices");
  std::vector<double> out(graph.n());
  apply_normalized_adjacency(graph, nu.mass(), out);
  return Dist::adopt(std::move(out));
}

std::vector<double> permute_mass(std::span<const Vertex> sigma, std::span<const double> nu) {
  std::vector<double> out(nu.size());
  for (std::size_t v = 0; v < nu.size(); ++v) out[sigma[v]] = nu[v];
  return out;
}

std::vector<Vertex> bfs_neighborhood(const Graph& graph, std::span<const Vertex> seeds, std::size_t radius) {
  const std::size_t n = graph.n();
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<Vertex> frontier;
  for (Vertex s : seeds) {
    if (s >= n) throw ValidationError("seed vertex " + std::to_string(s) + " out of range");
    if (dist[s] == kUnseen) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  std::vector<Vertex> next;
  for (std::size_t r = 0; r < radius && !frontier.empty(); ++r) {
    next.clear();
    for (Vertex u : frontier) {
      for (Vertex w : graph.neighbors(u)) {
        if (dist[w] == kUnseen) {
          dist[w] = r + 1;
          next.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (dist[v] != kUnseen) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<std::size_t> bfs_distances(const Graph& graph, Vertex source) {
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(graph.n(), kUnseen);
  std::queue<Vertex> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (Vertex w : graph.neighbors(u)) {
      if (dist[w] == kUnseen) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

std::size_t girth(const Graph& graph) {
  // BFS from every vertex, abandoned once depth reaches half the best cycle so far.
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t n = graph.n();
  std::size_t best = kNone;
  std::vector<std::size_t> dist(n, kNone);
  std::vector<Vertex> parent(n);
  std::vector<Vertex> touched;
  std::queue<Vertex> frontier;
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex v : touched) dist[v] = kNone;
    touched.clear();
    frontier = {};
    dist[s] = 0;
    parent[s] = s;
    touched.push_back(s);
    frontier.push(s);
    while (!frontier.empty()) {
      const Vertex u = frontier.front();
      frontier.pop();
      if (best != kNone && 2 * dist[u] + 1 >= best) break;
      for (Vertex w : graph.neighbors(u)) {
        if (dist[w] == kNone) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          touched.push_back(w);
          frontier.push(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

std::vector<std::size_t> sphere_sizes(const Graph& graph, Vertex v, std::size_t radius) {
  const auto dist = bfs_distances(graph, v);
  std::vector<std::size_t> sizes(radius + 1, 0);
  for (std::size_t dv : dist) {
    if (dv <= radius) ++sizes[dv];
  }
  return sizes;
}

}  // namespace rcut
