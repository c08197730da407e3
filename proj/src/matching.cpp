#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "rcut/error.hpp"
#include "rcut/graph.hpp"

namespace rcut {
namespace {

constexpr Vertex kFree = std::numeric_limits<Vertex>::max();
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

// Hopcroft-Karp on a bipartite graph with n left and n right vertices.
// Left vertex u may be matched to any right vertex in adj[u]; lists are
// scanned in order, so the result is a deterministic function of the input.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const std::vector<std::vector<Vertex>>& adj)
      : adj_(adj), n_(adj.size()), match_left_(n_, kFree), match_right_(n_, kFree), layer_(n_), cursor_(n_) {}

  std::size_t run() {
    std::size_t size = 0;
    while (build_layers()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      for (Vertex u = 0; u < n_; ++u) {
        if (match_left_[u] == kFree && augment(u)) ++size;
      }
    }
    return size;
  }

  const std::vector<Vertex>& match_left() const { return match_left_; }

 private:
  bool build_layers() {
    std::queue<Vertex> frontier;
    for (Vertex u = 0; u < n_; ++u) {
      if (match_left_[u] == kFree) {
        layer_[u] = 0;
        frontier.push(u);
      } else {
        layer_[u] = kInf;
      }
    }
    bool found_free = false;
    while (!frontier.empty()) {
      const Vertex u = frontier.front();
      frontier.pop();
      for (Vertex v : adj_[u]) {
        const Vertex w = match_right_[v];
        if (w == kFree) {
          found_free = true;
        } else if (layer_[w] == kInf) {
          layer_[w] = layer_[u] + 1;
          frontier.push(w);
        }
      }
    }
    return found_free;
  }

  // Iterative layered DFS; augments along the first path found.
  bool augment(Vertex root) {
    std::vector<Vertex> stack{root};
    while (!stack.empty()) {
      const Vertex u = stack.back();
      bool advanced = false;
      while (cursor_[u] < adj_[u].size()) {
        const Vertex v = adj_[u][cursor_[u]];
        const Vertex w = match_right_[v];
        if (w == kFree) {
          // Flip the path root -> ... -> u -> v.
          Vertex right = v;
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            const Vertex left = *it;
            const Vertex prev_right = match_left_[left];
            match_left_[left] = right;
            match_right_[right] = left;
            right = prev_right;
          }
          return true;
        }
        if (layer_[w] == layer_[u] + 1) {
          stack.push_back(w);
          advanced = true;
          break;
        }
        ++cursor_[u];
      }
      if (!advanced) {
        layer_[u] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++cursor_[stack.back()];
      }
    }
    return false;
  }

  const std::vector<std::vector<Vertex>>& adj_;
  std::size_t n_;
  std::vector<Vertex> match_left_;
  std::vector<Vertex> match_right_;
  std::vector<std::size_t> layer_;
  std::vector<std::size_t> cursor_;
};

}  // namespace

PermDecomposition decompose_permutations(const Graph& graph) {
  require_admissible(graph);
  const std::size_t n = graph.n();
  const std::size_t d = graph.d();

  std::vector<std::vector<Vertex>> remaining(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto row = graph.neighbors(v);
    remaining[v].assign(row.begin(), row.end());
  }

  PermDecomposition out;
  out.perms.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    // The remaining double cover is (d - i)-regular bipartite, so Hall's
    // condition guarantees a perfect matching.
    HopcroftKarp hk(remaining);
    const std::size_t size = hk.run();
    if (size != n) {
      throw NumericalError("perfect matching " + std::to_string(i) + " has size " + std::to_string(size) + " < " +
                           std::to_string(n));
    }
    const auto& sigma = hk.match_left();
    for (Vertex v = 0; v < n; ++v) {
      auto& row = remaining[v];
      row.erase(std::find(row.begin(), row.end(), sigma[v]));
    }
    out.perms.push_back(sigma);
  }
  return out;
}

}  // namespace rcut
