#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "rcut/error.hpp"
#include "rcut/generators.hpp"
#include "rcut/graph.hpp"
#include "support.hpp"

using namespace rcut;

TEST_SUITE("graph") {

TEST_CASE("validate flags") {
  CHECK(validate(complete_graph(4)).admissible());
  CHECK(validate(petersen_graph()).admissible());

  // 6-cycle: well formed, but degree 2 and bipartite.
  std::vector<std::pair<Vertex, Vertex>> cycle{{0, 1}, {0, 5}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
  const auto c6 = Graph::from_edges(6, cycle);
  const auto r = validate(c6);
  CHECK(r.d_regular);
  CHECK(r.simple);
  CHECK(r.connected);
  CHECK_FALSE(r.degree_at_least_3);
  CHECK_FALSE(r.non_bipartite);
  CHECK_THROWS_AS(require_admissible(c6), ValidationError);

  // K_{3,3}
  std::vector<std::pair<Vertex, Vertex>> k33;
  for (Vertex u = 0; u < 3; ++u)
    for (Vertex v = 3; v < 6; ++v) k33.emplace_back(u, v);
  const auto rb = validate(Graph::from_edges(6, k33));
  CHECK_FALSE(rb.non_bipartite);
  CHECK(rb.first_failure() == "non_bipartite");

  // Two disjoint K4s.
  std::vector<std::pair<Vertex, Vertex>> two;
  for (Vertex base : {0u, 4u})
    for (Vertex u = 0; u < 4; ++u)
      for (Vertex v = u + 1; v < 4; ++v) two.emplace_back(base + u, base + v);
  CHECK_FALSE(validate(Graph::from_edges(8, two)).connected);
}

TEST_CASE("structural errors are distinct from validation failures") {
  CHECK_THROWS_AS(Graph(3, 2, {1, 2, 0, 2, 0, 7}), StructuralError);
  CHECK_THROWS_AS(Graph(3, 2, {2, 1, 0, 2, 0, 1}), StructuralError);
  CHECK_THROWS_AS(Graph(3, 2, {1, 2, 0}), StructuralError);
  CHECK_THROWS_AS(Graph(0, 3, {}), StructuralError);
  // Self-loop and asymmetric rows are well formed but not simple.
  CHECK_FALSE(validate(Graph(2, 1, {0, 0})).simple);
  CHECK_FALSE(validate(Graph(3, 1, {1, 2, 0})).simple);
}

TEST_CASE("apply_P") {
  const auto k4 = complete_graph(4);
  const auto mu1 = apply_P(k4, Dist::delta(4, 0));
  CHECK(mu1[0] == 0.0);
  for (Vertex v = 1; v < 4; ++v) CHECK(mu1[v] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto pet = petersen_graph();
  const auto pi = Dist::uniform(10);
  const auto p_pi = apply_P(pet, pi);
  for (Vertex v = 0; v < 10; ++v) CHECK(std::abs(p_pi[v] - 0.1) < 1e-15);

  const auto mu2 = apply_P(pet, apply_P(pet, Dist::delta(10, 0)));
  const auto dist = bfs_distances(pet, 0);
  for (Vertex v = 0; v < 10; ++v) {
    if (dist[v] == 0) CHECK(mu2[v] == doctest::Approx(1.0 / 3.0));
    if (dist[v] == 1) CHECK(mu2[v] == 0.0);
    if (dist[v] == 2) CHECK(mu2[v] == doctest::Approx(1.0 / 9.0));
  }
  CHECK(std::count(dist.begin(), dist.end(), std::size_t{2}) == 6);

  CHECK_THROWS_AS(apply_P(pet, Dist::uniform(4)), ValidationError);
}

TEST_CASE("apply_P conserves mass on random inputs") {
  Rng rng(11);
  for (const auto& g : {petersen_graph(), random_regular({60, 4, 3, 1000}), circulant_graph(31, {1, 5, 7})}) {
    for (int k = 0; k < 20; ++k) {
      const auto nu = testing::random_dist(g.n(), rng);
      const auto out = apply_P(g, nu);
      double total = 0.0;
      for (double x : out.mass()) total += x;
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("permutation decomposition sums to the adjacency matrix") {
  for (const auto& g : {complete_graph(4), petersen_graph(), complete_graph(7), random_regular({100, 3, 7, 1000}),
                        random_regular({50, 5, 2, 1000}), circulant_graph(63, {1, 2, 4}),
                        lps_graph({5, 29}).graph}) {
    const auto dec = decompose_permutations(g);
    REQUIRE(dec.perms.size() == g.d());
    std::vector<std::vector<Vertex>> images(g.n());
    for (const auto& sigma : dec.perms) {
      REQUIRE(sigma.size() == g.n());
      std::vector<char> hit(g.n(), 0);
      for (Vertex v = 0; v < g.n(); ++v) {
        CHECK(g.has_edge(v, sigma[v]));
        hit[sigma[v]] = 1;
        images[v].push_back(sigma[v]);
      }
      CHECK(std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; }));
    }
    // Multiset {sigma_i(v)} equals neighbors(v), i.e. sum_i P_i = A entrywise.
    for (Vertex v = 0; v < g.n(); ++v) {
      std::sort(images[v].begin(), images[v].end());
      const auto row = g.neighbors(v);
      CHECK(std::equal(images[v].begin(), images[v].end(), row.begin(), row.end()));
    }
  }
}

TEST_CASE("apply_P agrees with the permutation average") {
  Rng rng(5);
  for (const auto& g : {petersen_graph(), random_regular({80, 3, 9, 1000})}) {
    const auto dec = decompose_permutations(g);
    for (int k = 0; k < 10; ++k) {
      const auto nu = testing::random_dist(g.n(), rng);
      const auto direct = apply_P(g, nu);
      std::vector<double> avg(g.n(), 0.0);
      for (const auto& sigma : dec.perms) {
        const auto moved = permute_mass(sigma, nu.mass());
        for (std::size_t x = 0; x < g.n(); ++x) avg[x] += moved[x] / static_cast<double>(g.d());
      }
      for (std::size_t x = 0; x < g.n(); ++x) CHECK(std::abs(avg[x] - direct[x]) < 1e-12);
    }
  }
}

TEST_CASE("decomposition is deterministic") {
  const auto g = random_regular({100, 3, 4, 1000});
  CHECK(decompose_permutations(g).perms == decompose_permutations(g).perms);
}

TEST_CASE("bfs_neighborhood") {
  const auto k4 = complete_graph(4);
  const auto pet = petersen_graph();
  const std::vector<Vertex> seed0{0};
  CHECK(bfs_neighborhood(pet, seed0, 0) == seed0);
  CHECK(bfs_neighborhood(k4, seed0, 1).size() == 4);
  CHECK(bfs_neighborhood(pet, seed0, 1).size() == 4);

  const auto g = random_regular({200, 3, 1, 1000});
  const std::vector<Vertex> seeds{3, 17, 101};
  std::size_t prev = 0;
  for (std::size_t r = 0; r < 30; ++r) {
    const auto ball = bfs_neighborhood(g, seeds, r);
    CHECK(ball.size() >= prev);
    CHECK(std::is_sorted(ball.begin(), ball.end()));
    prev = ball.size();
  }
  CHECK(prev == 200);
  CHECK(bfs_neighborhood(g, seeds, 40) == bfs_neighborhood(g, seeds, 60));
  const std::vector<Vertex> bad{500};
  CHECK_THROWS_AS(bfs_neighborhood(g, bad, 1), ValidationError);
}

TEST_CASE("girth and spheres") {
  CHECK(girth(complete_graph(4)) == 3);
  CHECK(girth(petersen_graph()) == 5);
  CHECK(girth(circulant_graph(40, {1, 7, 20})) == 4);
  CHECK(sphere_sizes(petersen_graph(), 0, 2) == std::vector<std::size_t>{1, 3, 6});
}

TEST_CASE("graph file round trip") {
  const auto dir = std::filesystem::temp_directory_path();
  for (const auto& g : {complete_graph(4), petersen_graph(), random_regular({30, 3, 2, 1000})}) {
    const auto path = dir / "rcut_roundtrip.txt";
    save_graph(g, path);
    const auto back = load_graph(path);
    CHECK(back == g);
    CHECK(back.provenance().family == g.provenance().family);
    CHECK(back.provenance().vertex_transitive == g.provenance().vertex_transitive);
    std::filesystem::remove(path);
  }
}

TEST_CASE("graph file errors") {
  CHECK_THROWS_AS(load_graph("/nonexistent/rcut.txt"), IoError);

  const std::string dup = "graph 4 3\n0 1\n0 1\n0 2\n1 2\n1 3\n2 3\n";
  try {
    parse_graph(dup);
    FAIL("duplicate edge accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }

  try {
    parse_graph("graph 6 2\n0 1\n0 5\n1 2\n2 3\n3 4\n4 5\n");
    FAIL("d = 2 accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("d >= 3 required") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_graph("graph 4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n"), ParseError);         // too few edges
  CHECK_THROWS_AS(parse_graph("graph 4 3\n0 2\n0 1\n0 3\n1 2\n1 3\n2 3\n"), ParseError);    // unsorted
  CHECK_THROWS_AS(parse_graph("graph 4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n3 2\n"), ParseError);    // u > v
  CHECK_THROWS_AS(parse_graph("graph 4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 9\n"), ParseError);    // out of range
  CHECK_THROWS_AS(parse_graph("grph 4 3\n"), ParseError);

  // K_{3,3} parses but is bipartite.
  std::string k33 = "graph 6 3\n";
  for (int u = 0; u < 3; ++u)
    for (int v = 3; v < 6; ++v) k33 += std::to_string(u) + " " + std::to_string(v) + "\n";
  try {
    parse_graph(k33);
    FAIL("bipartite graph accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("non_bipartite") != std::string::npos);
  }
}

TEST_CASE("dist construction policy") {
  CHECK_NOTHROW(Dist({0.5, 0.5 + 5e-10}));
  CHECK_THROWS_AS(Dist({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(Dist({1.5, -0.5}), ValidationError);
  const Dist d({0.25, 0.75 + 1e-10});
  CHECK(std::abs(d[0] + d[1] - 1.0) < 1e-15);
}

}  // TEST_SUITE
