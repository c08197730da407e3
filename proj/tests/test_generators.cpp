#include <doctest.h>

#include <functional>
#include <set>

#include "rcut/error.hpp"
#include "rcut/generators.hpp"
#include "support.hpp"

using namespace rcut;

namespace {

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("number theory helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(29));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(legendre(5, 29) == 1);
  CHECK(legendre(5, 13) == -1);
  CHECK(legendre(17, 13) == 1);
  for (std::int64_t q : {5, 13, 29, 41, 61, 89}) {
    const auto i = sqrt_minus_one(q);
    CHECK((i * i + 1) % q == 0);
  }
  CHECK(lps_quaternions(5).size() == 6);
  CHECK(lps_quaternions(13).size() == 14);
  CHECK(lps_quaternions(17).size() == 18);
}

TEST_CASE("lps(5,29)") {
  const auto lps = lps_graph({5, 29});
  const auto& g = lps.graph;
  CHECK(g.n() == 29 * 28 * 30 / 2);
  CHECK(g.n() == 12180);
  CHECK(g.d() == 6);
  CHECK(lps.group_order() == 12180);
  CHECK(validate(g).admissible());
  CHECK(g.provenance().vertex_transitive);

  // Generator set is closed under inversion and avoids the identity.
  const Mat2 id{1, 0, 0, 1};
  std::set<Mat2> gens(lps.generators.begin(), lps.generators.end());
  CHECK(gens.size() == 6);
  for (const auto& s : lps.generators) {
    CHECK(s != id);
    bool has_inverse = false;
    for (const auto& t : lps.generators) has_inverse = has_inverse || psl_canonical(mat_mul(s, t, 29), 29) == id;
    CHECK(has_inverse);
  }

  // Vertex-transitivity spot check.
  for (Vertex v : {1u, 777u, 12179u}) CHECK(sphere_sizes(g, 0, 3) == sphere_sizes(g, v, 3));

  // The left action is an automorphism without fixed points.
  for (Vertex v = 0; v < g.n(); v += 97) {
    const Vertex tv = lps.left_unipotent[v];
    CHECK(tv != v);
    for (Vertex w : g.neighbors(v)) CHECK(g.has_edge(tv, lps.left_unipotent[w]));
  }
}

TEST_CASE("lps(17,13) is 18-regular on 1092 vertices") {
  const auto lps = lps_graph({17, 13});
  CHECK(lps.graph.n() == 1092);
  CHECK(lps.graph.d() == 18);
  CHECK(validate(lps.graph).admissible());
}

TEST_CASE("lps parameter errors") {
  CHECK(message_of([] { lps_graph({5, 13}); }).find("bipartite PGL case unsupported") != std::string::npos);
  CHECK_THROWS_AS(lps_graph({5, 13}), ValidationError);
  CHECK(message_of([] { lps_graph({4, 29}); }).find("prime") != std::string::npos);
  CHECK_THROWS_AS(lps_graph({4, 29}), ValidationError);
  CHECK_THROWS_AS(lps_graph({7, 29}), ValidationError);   // p = 3 mod 4
  CHECK_THROWS_AS(lps_graph({5, 5}), ValidationError);    // p = q
  CHECK_THROWS_AS(lps_graph({29, 5}), ValidationError);   // q <= 2 sqrt(p)
}

TEST_CASE("lps vertex ids are deterministic") {
  const auto a = lps_graph({5, 29});
  const auto b = lps_graph({5, 29});
  CHECK(a.graph == b.graph);
  CHECK(a.elements == b.elements);
}

TEST_CASE("random_regular") {
  const auto g = random_regular({100, 3, 1, 1000});
  CHECK(g.n() == 100);
  CHECK(validate(g).admissible());
  CHECK_FALSE(g.provenance().vertex_transitive);
  CHECK(random_regular({100, 3, 1, 1000}) == g);
  CHECK_FALSE(random_regular({100, 3, 2, 1000}) == g);

  CHECK_THROWS_AS(random_regular({101, 3, 1, 1000}), ValidationError);
  CHECK_THROWS_AS(random_regular({10, 2, 1, 1000}), ValidationError);
  CHECK(random_regular({4, 3, 9, 1000}) == complete_graph(4));
  // A budget of one attempt is almost always exhausted for larger graphs.
  CHECK_THROWS_AS(random_regular({2000, 7, 1, 1}), NumericalError);
}

TEST_CASE("named fixtures") {
  CHECK(named_fixture("complete:4") == complete_graph(4));
  const auto pet = named_fixture("petersen");
  CHECK(pet.n() == 10);
  CHECK(pet.d() == 3);
  CHECK(validate(pet).admissible());
  CHECK(validate(named_fixture("circulant:63:1,2,4")).admissible());
  CHECK(named_fixture("circulant:63:1,2,4").d() == 6);
  // Only odd offsets on an even cycle: bipartite.
  CHECK_THROWS_AS(named_fixture("circulant:64:1,3,5"), ValidationError);
  // n/2 contributes a single neighbour.
  CHECK(named_fixture("circulant:64:1,2,32").d() == 5);
  CHECK_THROWS_AS(named_fixture("torus:4"), ValidationError);
}

}  // TEST_SUITE
