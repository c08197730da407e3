#include "rcut/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rcut/error.hpp"
#include "rcut/rng.hpp"

namespace rcut {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t q) {
  const std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t q) {
  std::int64_t result = 1;
  base = mod(base, q);
  while (exp > 0) {
    if (exp & 1) result = result * base % q;
    base = base * base % q;
    exp >>= 1;
  }
  return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t q) { return pow_mod(a, q - 2, q); }

std::int64_t det(const Mat2& m, std::int64_t q) { return mod(m[0] * m[3] - m[1] * m[2], q); }

std::uint64_t key_of(const Mat2& m, std::int64_t q) {
  return ((static_cast<std::uint64_t>(m[0]) * q + m[1]) * q + m[2]) * q + m[3];
}

}  // namespace

bool is_prime(std::uint64_t x) noexcept {
  if (x < 2) return false;
  for (std::uint64_t f = 2; f * f <= x; ++f) {
    if (x % f == 0) return false;
  }
  return true;
}

int legendre(std::int64_t a, std::int64_t p) {
  const std::int64_t r = pow_mod(mod(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

std::int64_t sqrt_minus_one(std::int64_t q) {
  for (std::int64_t x = 1; x < q; ++x) {
    if (x * x % q == q - 1) return x;
  }
  throw ValidationError("-1 is not a square mod " + std::to_string(q));
}

Mat2 mat_mul(const Mat2& a, const Mat2& b, std::int64_t q) {
  return {mod(a[0] * b[0] + a[1] * b[2], q), mod(a[0] * b[1] + a[1] * b[3], q), mod(a[2] * b[0] + a[3] * b[2], q),
          mod(a[2] * b[1] + a[3] * b[3], q)};
}

Mat2 psl_canonical(const Mat2& m, std::int64_t q) {
  const std::int64_t dm = det(m, q);
  if (dm == 0) throw ValidationError("singular matrix has no projective class in PSL(2, q)");
  if (legendre(dm, q) != 1) throw ValidationError("determinant is not a square mod q; matrix is outside PSL(2, q)");
  // Find lambda with lambda^2 * det = 1.
  const std::int64_t target = inv_mod(dm, q);
  std::int64_t lambda = 0;
  for (std::int64_t x = 1; x < q; ++x) {
    if (x * x % q == target) {
      lambda = x;
      break;
    }
  }
  Mat2 out{mod(m[0] * lambda, q), mod(m[1] * lambda, q), mod(m[2] * lambda, q), mod(m[3] * lambda, q)};
  const std::int64_t half = (q - 1) / 2;
  const auto lead = std::find_if(out.begin(), out.end(), [](std::int64_t x) { return x != 0; });
  if (*lead > half) {
    for (auto& x : out) x = mod(-x, q);
  }
  return out;
}

std::vector<std::array<std::int64_t, 4>> lps_quaternions(std::int64_t p) {
  std::vector<std::array<std::int64_t, 4>> out;
  const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p))) + 1;
  for (std::int64_t a0 = 1; a0 <= bound; a0 += 2) {
    for (std::int64_t a1 = -bound; a1 <= bound; ++a1) {
      for (std::int64_t a2 = -bound; a2 <= bound; ++a2) {
        for (std::int64_t a3 = -bound; a3 <= bound; ++a3) {
          if ((a1 | a2 | a3) & 1) continue;
          if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p) out.push_back({a0, a1, a2, a3});
        }
      }
    }
  }
  return out;
}

void check_lps_params(const LpsParams& params) {
  const auto [p, q] = params;
  if (p <= 0 || !is_prime(static_cast<std::uint64_t>(p))) throw ValidationError("p = " + std::to_string(p) + " is not prime");
  if (q <= 0 || !is_prime(static_cast<std::uint64_t>(q))) throw ValidationError("q = " + std::to_string(q) + " is not prime");
  if (p % 4 != 1) throw ValidationError("p must be 1 mod 4");
  if (q % 4 != 1) throw ValidationError("q must be 1 mod 4");
  if (p == q) throw ValidationError("p and q must differ");
  if (q * q <= 4 * p) throw ValidationError("q must exceed 2*sqrt(p)");
  if (legendre(p, q) != 1) {
    throw ValidationError("(p|q) = -1: bipartite PGL case unsupported");
  }
}

LpsGraph lps_graph(const LpsParams& params) {
  check_lps_params(params);
  const std::int64_t p = params.p;
  const std::int64_t q = params.q;
  const std::int64_t half = (q - 1) / 2;

  const std::int64_t iota = sqrt_minus_one(q);
  std::vector<Mat2> generators;
  for (const auto& [a0, a1, a2, a3] : lps_quaternions(p)) {
    const Mat2 m{mod(a0 + iota * a1, q), mod(a2 + iota * a3, q), mod(-a2 + iota * a3, q), mod(a0 - iota * a1, q)};
    generators.push_back(psl_canonical(m, q));
  }
  if (generators.size() != static_cast<std::size_t>(p + 1)) {
    throw NumericalError("expected " + std::to_string(p + 1) + " quaternion generators, found " +
                         std::to_string(generators.size()));
  }
  const Mat2 identity{1, 0, 0, 1};
  auto sorted_gens = generators;
  std::sort(sorted_gens.begin(), sorted_gens.end());
  if (std::adjacent_find(sorted_gens.begin(), sorted_gens.end()) != sorted_gens.end()) {
    throw NumericalError("LPS generator set has repeated elements");
  }
  for (const auto& s : generators) {
    if (s == identity) throw NumericalError("LPS generator set contains the identity");
    // Projective inverse of [[a,b],[c,d]] with det 1 is [[d,-b],[-c,a]].
    const Mat2 inv = psl_canonical({s[3], mod(-s[1], q), mod(-s[2], q), s[0]}, q);
    if (!std::binary_search(sorted_gens.begin(), sorted_gens.end(), inv)) {
      throw NumericalError("LPS generator set is not closed under inversion");
    }
  }

  // Enumerate SL(2, q) representatives whose leading entry lies in [1, half].
  // The loops visit tuples in lexicographic order.
  std::vector<Mat2> elems;
  elems.reserve(static_cast<std::size_t>(q * (q * q - 1) / 2));
  for (std::int64_t a = 0; a < q; ++a) {
    for (std::int64_t b = 0; b < q; ++b) {
      if (a == 0 && (b == 0 || b > half)) continue;
      if (a > half) continue;
      if (a != 0) {
        const std::int64_t ainv = inv_mod(a, q);
        for (std::int64_t c = 0; c < q; ++c) elems.push_back({a, b, c, mod((1 + b * c) * ainv, q)});
      } else {
        const std::int64_t c = mod(-inv_mod(b, q), q);
        for (std::int64_t dd = 0; dd < q; ++dd) elems.push_back({a, b, c, dd});
      }
    }
  }
  const std::size_t n = elems.size();
  if (n != static_cast<std::size_t>(q * (q * q - 1) / 2)) throw NumericalError("PSL(2, q) enumeration has wrong order");

  std::vector<std::uint64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = key_of(elems[i], q);
  // det(g*s) = 1 already, so canonicalizing a product only fixes the sign.
  auto vertex_of = [&](Mat2 m) -> Vertex {
    const auto lead = std::find_if(m.begin(), m.end(), [](std::int64_t x) { return x != 0; });
    if (*lead > half) {
      for (auto& x : m) x = mod(-x, q);
    }
    const auto k = key_of(m, q);
    const auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k) throw NumericalError("group element missing from PSL(2, q) enumeration");
    return static_cast<Vertex>(it - keys.begin());
  };
  const std::size_t d = generators.size();
  std::vector<Vertex> adjacency(n * d);
  const Mat2 unipotent{1, 1, 0, 1};
  std::vector<Vertex> left_unipotent(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < d; ++i) adjacency[v * d + i] = vertex_of(mat_mul(elems[v], generators[i], q));
    std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(v * d),
              adjacency.begin() + static_cast<std::ptrdiff_t>((v + 1) * d));
    left_unipotent[v] = vertex_of(mat_mul(unipotent, elems[v], q));
  }
  Graph graph(n, d, std::move(adjacency), Provenance{"lps(" + std::to_string(p) + "," + std::to_string(q) + ")", true});
  require_admissible(graph);
  return LpsGraph{std::move(graph), iota, std::move(generators), std::move(elems), std::move(left_unipotent)};
}

Graph random_regular(const RandomRegularParams& params) {
  const std::size_t n = params.n;
  const std::size_t d = params.d;
  if (d < 3) throw ValidationError("d >= 3 required");
  if ((n * d) % 2 != 0) throw ValidationError("n*d must be even");
  if (n <= d) throw ValidationError("n must exceed d");

  Rng rng(params.seed);
  std::vector<Vertex> stubs(n * d);
  std::vector<Vertex> rows(n * d);
  std::vector<std::size_t> fill(n);
  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<Vertex>(i / d);
    rng.shuffle(stubs.begin(), stubs.end());
    std::fill(fill.begin(), fill.end(), 0);
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      const Vertex u = stubs[i];
      const Vertex v = stubs[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      rows[u * d + fill[u]++] = v;
      rows[v * d + fill[v]++] = u;
    }
    if (!ok) continue;
    for (std::size_t v = 0; v < n && ok; ++v) {
      auto first = rows.begin() + static_cast<std::ptrdiff_t>(v * d);
      std::sort(first, first + static_cast<std::ptrdiff_t>(d));
      ok = std::adjacent_find(first, first + static_cast<std::ptrdiff_t>(d)) == first + static_cast<std::ptrdiff_t>(d);
    }
    if (!ok) continue;
    Graph g(n, d, rows,
            Provenance{"random_regular(" + std::to_string(n) + "," + std::to_string(d) + ",seed=" +
                           std::to_string(params.seed) + ")",
                       false});
    if (validate(g).admissible()) return g;
  }
  throw NumericalError("random_regular: retry budget of " + std::to_string(params.max_attempts) + " attempts exhausted");
}

Graph complete_graph(std::size_t k) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  }
  Graph g = Graph::from_edges(k, edges, Provenance{"complete(" + std::to_string(k) + ")", true});
  require_admissible(g);
  return g;
}

Graph petersen_graph() {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  Graph g = Graph::from_edges(10, edges, Provenance{"petersen", true});
  require_admissible(g);
  return g;
}

Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets) {
  auto sorted = offsets;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) throw ValidationError("circulant needs at least one offset");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ValidationError("repeated circulant offset");
  for (std::size_t o : sorted) {
    if (o == 0 || 2 * o > n) throw ValidationError("circulant offsets must lie in [1, n/2]");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex x = 0; x < n; ++x) {
    for (std::size_t o : sorted) {
      const auto y = static_cast<Vertex>((x + o) % n);
      if (2 * o == n && y < x) continue;
      edges.emplace_back(std::min(x, y), std::max(x, y));
    }
  }
  std::string label = "circulant(" + std::to_string(n) + ";";
  for (std::size_t i = 0; i < sorted.size(); ++i) label += (i ? "," : "") + std::to_string(sorted[i]);
  label += ")";
  Graph g = Graph::from_edges(n, edges, Provenance{label, true});
  require_admissible(g);
  return g;
}

}  // namespace rcut

namespace rcut {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t to_size(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ValidationError("expected a nonnegative integer in fixture name, got '" + s + "'");
  }
  return std::stoull(s);
}

}  // namespace

Graph named_fixture(const std::string& name) {
  const auto parts = split(name, ':');
  if (parts[0] == "petersen" && parts.size() == 1) return petersen_graph();
  if (parts[0] == "complete" && parts.size() == 2) return complete_graph(to_size(parts[1]));
  if (parts[0] == "circulant" && parts.size() == 3) {
    std::vector<std::size_t> offsets;
    for (const auto& o : split(parts[2], ',')) offsets.push_back(to_size(o));
    return circulant_graph(to_size(parts[1]), offsets);
  }
  throw ValidationError("unknown fixture '" + name + "' (expected complete:<k>, petersen, circulant:<n>:<offsets>)");
}

}  // namespace rcut
