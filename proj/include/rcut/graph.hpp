#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcut/dist.hpp"

namespace rcut {

// Where a graph came from. Generators that know their output is
// vertex-transitive say so here; nothing downstream infers it.
struct Provenance {
  std::string family;
  bool vertex_transitive = false;
};

// Undirected graph with constant degree d, stored as a flat n*d array of
// neighbor ids (row v is [v*d, (v+1)*d)). Rows are sorted. Immutable.
//
// Construction only checks structure; admissibility (simple, connected,
// non-bipartite, d >= 3) is reported by validate() and enforced by
// require_admissible().
class Graph {
 public:
  Graph(std::size_t n, std::size_t d, std::vector<Vertex> adjacency, Provenance provenance = {});

  // Builds the adjacency from an undirected edge list. Every vertex must
  // end up with the same degree.
  static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                          Provenance provenance = {});

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {neighbors_.data() + static_cast<std::size_t>(v) * d_, d_};
  }
  std::span<const Vertex> adjacency() const noexcept { return neighbors_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  // Edges {u, v} with u < v in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  Graph with_provenance(Provenance provenance) const;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<Vertex> neighbors_;
  Provenance provenance_;
};

struct ValidationReport {
  bool simple = false;          // no loops, no repeated neighbors, symmetric
  bool d_regular = false;       // every vertex has exactly d distinct neighbors
  bool degree_at_least_3 = false;
  bool connected = false;
  bool non_bipartite = false;

  bool admissible() const noexcept {
    return simple && d_regular && degree_at_least_3 && connected && non_bipartite;
  }
  // Name of the first failing flag, or empty when admissible.
  std::string first_failure() const;
};

ValidationReport validate(const Graph& graph);

// Throws ValidationError naming the failing flag.
void require_admissible(const Graph& graph);

// out(x) = (1/d) * sum over y ~ x of in(y).
void apply_normalized_adjacency(const Graph& graph, std::span<const double> in, std::span<double> out);

Dist apply_P(const Graph& graph, const Dist& nu);

// Bijections sigma_i with sum_i P_i = A, where P_i moves mass from v to sigma_i(v).
struct PermDecomposition {
  std::vector<std::vector<Vertex>> perms;
};

// Splits the edge set into d perfect matchings of the bipartite double
// cover with Hopcroft-Karp. Deterministic: ties go to the lowest id.
PermDecomposition decompose_permutations(const Graph& graph);

// nu_i = P_i nu, i.e. nu_i(sigma(v)) = nu(v).
std::vector<double> permute_mass(std::span<const Vertex> sigma, std::span<const double> nu);

// All vertices within graph distance `radius` of the seeds, sorted.
std::vector<Vertex> bfs_neighborhood(const Graph& graph, std::span<const Vertex> seeds, std::size_t radius);

// Distances from a single source; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& graph, Vertex source);

// Length of a shortest cycle; SIZE_MAX for forests.
std::size_t girth(const Graph& graph);

// Number of vertices at each distance 0..radius from v.
std::vector<std::size_t> sphere_sizes(const Graph& graph, Vertex v, std::size_t radius);

// Canonical edge-list text format:
//   graph <n> <d>
//   <u> <v>        (u < v, lexicographically sorted, n*d/2 lines)
// Lines starting with '#' are comments. "# family: <label>" and
// "# vertex-transitive" are read back into the provenance.
Graph load_graph(const std::filesystem::path& path);
Graph parse_graph(const std::string& text);
void save_graph(const Graph& graph, const std::filesystem::path& path);
std::string format_graph(const Graph& graph);

}  // namespace rcut
