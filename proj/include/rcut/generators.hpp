#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rcut/graph.hpp"

namespace rcut {

bool is_prime(std::uint64_t x) noexcept;

// Legendre symbol (a|p) for an odd prime p: 1, -1, or 0.
int legendre(std::int64_t a, std::int64_t p);

// Smallest iota in [1, q) with iota^2 = -1 mod q; requires q = 1 mod 4.
std::int64_t sqrt_minus_one(std::int64_t q);

struct LpsParams {
  std::int64_t p = 5;
  std::int64_t q = 29;
};

// Element of PSL(2, Z_q) in canonical form: determinant 1 and the first
// nonzero entry (row-major) in [1, (q-1)/2].
using Mat2 = std::array<std::int64_t, 4>;

struct LpsGraph {
  Graph graph;
  std::int64_t iota = 0;
  std::vector<Mat2> generators;  // p+1 canonical generator matrices
  std::vector<Mat2> elements;    // vertex id -> group element, lexicographic
  // Left multiplication by [[1,1],[0,1]]: a fixed-point-free automorphism of
  // order q commuting with the walk operator.
  std::vector<Vertex> left_unipotent;

  std::size_t group_order() const noexcept { return elements.size(); }
};

// Throws ValidationError on parameter violations. (p|q) = -1 is the
// bipartite PGL case and is rejected.
void check_lps_params(const LpsParams& params);

// Cayley graph of PSL(2, Z_q) with respect to the p+1 quaternion
// generators; (p+1)-regular on q(q^2-1)/2 vertices.
LpsGraph lps_graph(const LpsParams& params);

// The p+1 quaternions (a0, a1, a2, a3) with a0 > 0 odd, a1..a3 even,
// a0^2 + a1^2 + a2^2 + a3^2 = p.
std::vector<std::array<std::int64_t, 4>> lps_quaternions(std::int64_t p);

Mat2 psl_canonical(const Mat2& m, std::int64_t q);
Mat2 mat_mul(const Mat2& a, const Mat2& b, std::int64_t q);

struct RandomRegularParams {
  std::size_t n = 0;
  std::size_t d = 3;
  std::uint64_t seed = 1;
  std::size_t max_attempts = 1000;
};

// Pairing model, rejecting loops, multi-edges, disconnected and bipartite
// outcomes. Deterministic given the seed.
Graph random_regular(const RandomRegularParams& params);

// Deterministic fixtures. Each result is checked for admissibility.
Graph complete_graph(std::size_t k);
Graph petersen_graph();
// Vertex x is joined to x +- o (mod n) for each offset o in [1, n/2].
Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets);

// "complete:<k>", "petersen", or "circulant:<n>:<o1>,<o2>,...".
Graph named_fixture(const std::string& name);

}  // namespace rcut
