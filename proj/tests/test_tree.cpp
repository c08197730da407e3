#include <doctest.h>

#include <cmath>
#include <map>

#include "rcut/generators.hpp"
#include "rcut/spectral.hpp"
#include "rcut/tree.hpp"
#include "rcut/walk.hpp"

using namespace rcut;

namespace {

// Explicit walk on the ball of radius t in T_d, one vertex per node.
struct ExplicitTree {
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::size_t> depth;

  ExplicitTree(std::size_t d, std::size_t radius) {
    adj.emplace_back();
    depth.push_back(0);
    std::vector<std::size_t> frontier{0};
    for (std::size_t r = 1; r <= radius; ++r) {
      std::vector<std::size_t> next;
      for (std::size_t v : frontier) {
        const std::size_t children = r == 1 ? d : d - 1;
        for (std::size_t c = 0; c < children; ++c) {
          const std::size_t w = adj.size();
          adj.emplace_back();
          depth.push_back(r);
          adj[v].push_back(w);
          adj[w].push_back(v);
          next.push_back(w);
        }
      }
      frontier = std::move(next);
    }
  }
};

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("first steps") {
  const auto laws = tree_evolve(3, 2);
  CHECK(laws[0].q(0) == 1.0);
  CHECK(laws[1].q(0) == 0.0);
  CHECK(laws[1].q(1) == doctest::Approx(1.0));
  CHECK(laws[2].q(0) == doctest::Approx(1.0 / 3.0));
  CHECK(laws[2].q(2) == doctest::Approx(2.0 / 3.0));
  CHECK(tree_entropy(3, 1) == doctest::Approx(std::log(3.0)));
  // 1/3 at the root, 6 vertices at mass 1/9.
  CHECK(tree_entropy(3, 2) == doctest::Approx(5.0 / 3.0 * std::log(3.0)).epsilon(1e-12));
  CHECK(tree_entropy(3, 2) == doctest::Approx(1.83102).epsilon(1e-5));
  CHECK(log_sphere_size(3, 0) == 0.0);
  CHECK(std::exp(log_sphere_size(3, 4)) == doctest::Approx(24.0));
}

TEST_CASE("parity and normalization over long runs") {
  for (std::size_t d : {3u, 6u}) {
    auto dist = tree_origin(d);
    for (std::size_t t = 1; t <= 10000; ++t) {
      dist = tree_step(dist);
      if (t % 997 != 0 && t != 10000) continue;
      double total = 0.0;
      for (std::size_t r = 0; r <= dist.max_radius(); ++r) {
        if ((r + t) % 2 == 1) CHECK(dist.q(r) == 0.0);
        total += dist.q(r);
      }
      CHECK(std::abs(total - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("radial recursion agrees with an explicit tree") {
  for (std::size_t d : {3u, 4u}) {
    const std::size_t T = 8;
    const ExplicitTree tree(d, T);
    std::vector<double> mass(tree.adj.size(), 0.0), prev;
    mass[0] = 1.0;
    const auto laws = tree_evolve(d, T);
    for (std::size_t t = 1; t <= T; ++t) {
      prev = mass;
      std::fill(mass.begin(), mass.end(), 0.0);
      for (std::size_t v = 0; v < prev.size(); ++v)
        for (std::size_t w : tree.adj[v]) mass[w] += prev[v] / static_cast<double>(d);
      std::map<std::size_t, double> q;
      double h = 0.0, e_sqrt = 0.0, e_log = 0.0;
      for (std::size_t v = 0; v < mass.size(); ++v) {
        q[tree.depth[v]] += mass[v];
        if (mass[v] > 0) h -= mass[v] * std::log(mass[v]);
        if (prev[v] == 0) continue;
        for (std::size_t w : tree.adj[v]) {
          const double p = prev[v] / static_cast<double>(d);
          e_sqrt += p * std::sqrt(mass[w] / prev[v]);
          e_log -= p * std::log(mass[w] / prev[v]);
        }
      }
      for (auto [r, m] : q) CHECK(std::abs(laws[t].q(r) - m) < 1e-13);
      CHECK(std::abs(tree_entropy(laws[t]) - h) < 1e-10);
      const auto s = tree_f_stats(laws[t - 1], laws[t]);
      CHECK(std::abs(s.e_sqrt_f - e_sqrt) < 1e-12);
      CHECK(std::abs(s.e_neg_log_f - e_log) < 1e-12);
    }
  }
}

TEST_CASE("tree f statistics obey the graph bounds") {
  for (std::size_t d : {3u, 6u}) {
    const auto series = tree_f_stats_series(d, 1000);
    for (const auto& s : series) {
      CHECK(s.min_f >= 1.0 / static_cast<double>(d) - 1e-12);
      CHECK(s.e_f <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("gaps to the limits shrink") {
  for (std::size_t d : {3u, 6u}) {
    const auto a = tree_f_stats(d, 100);
    const auto b = tree_f_stats(d, 1000);
    CHECK(std::abs(b.e_sqrt_f - alon_boppana(d)) < std::abs(a.e_sqrt_f - alon_boppana(d)));
    CHECK(std::abs(b.e_neg_log_f - tree_entropy_rate(d)) < std::abs(a.e_neg_log_f - tree_entropy_rate(d)));
  }
}

TEST_CASE("entropy differences equal E[-log f]") {
  const auto laws = tree_evolve(5, 60);
  for (std::size_t t = 1; t <= 60; ++t) {
    const auto s = tree_f_stats(laws[t - 1], laws[t]);
    CHECK(std::abs(s.e_neg_log_f - (tree_entropy(laws[t]) - tree_entropy(laws[t - 1]))) < 1e-10);
  }
}

TEST_CASE("lps(5,29) matches the tree below half the girth") {
  const auto lps = lps_graph({5, 29});
  const auto g = girth(lps.graph);
  CHECK(g >= 4);
  const auto laws = tree_evolve(6, g);
  WalkStream w(lps.graph, 0);
  for (std::size_t t = 1; 2 * t < g; ++t) {
    w.step();
    const auto s = f_stats(lps.graph, w.previous(), w.current());
    const auto ts = tree_f_stats(laws[t - 1], laws[t]);
    CHECK(std::abs(s.e_sqrt_f - ts.e_sqrt_f) < 1e-12);
    CHECK(std::abs(s.e_neg_log_f - ts.e_neg_log_f) < 1e-12);
  }
}

TEST_CASE("threshold time") {
  const auto t = tree_threshold_time(6, 0.15);
  REQUIRE(t.has_value());
  CHECK(std::abs(tree_f_stats(6, *t).e_sqrt_f - alon_boppana(6)) <= 0.15);
  if (*t > 1) CHECK(std::abs(tree_f_stats(6, *t - 1).e_sqrt_f - alon_boppana(6)) > 0.15);
  CHECK_FALSE(tree_threshold_time(3, 1e-9, 50).has_value());
}

}  // TEST_SUITE
