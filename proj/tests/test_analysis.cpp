#include <doctest.h>

#include <cmath>

#include "rcut/analysis.hpp"
#include "rcut/error.hpp"
#include "rcut/generators.hpp"
#include "rcut/serialize.hpp"
#include "rcut/spectral.hpp"
#include "rcut/walk.hpp"

using namespace rcut;

TEST_SUITE("analysis") {

TEST_CASE("scan of K4") {
  const std::vector<Graph> family{complete_graph(4)};
  ScanOptions o;
  // tv(mu^1) is exactly 1/4, so 0.25 itself is avoided as a threshold.
  o.alphas = {0.1, 0.2, 0.5};
  const auto scan = cutoff_scan(family, o);
  REQUIRE(scan.rows.size() == 1);
  const auto& row = scan.rows[0];
  CHECK(row.t_mix == std::vector<std::size_t>{2, 2, 1});
  CHECK(row.normalized_time[1] == doctest::Approx(2.0 * tree_entropy_rate(3) / std::log(4.0)));
  CHECK(row.normalized_time[1] == doctest::Approx(0.3333).epsilon(1e-3));
  CHECK(cutoff_window(scan, row, 0.1, 0.5) == 1);
  CHECK_THROWS_AS(cutoff_window(scan, row, 0.5, 0.1), ValidationError);
  CHECK_THROWS_AS(cutoff_window(scan, row, 0.1, 0.3), ValidationError);
  const auto same = cutoff_ratio(scan, 0.2, 0.2);
  CHECK(*same.entries[0].ratio == 1.0);
}

TEST_CASE("zero mixing times are excluded from ratios") {
  const std::vector<Graph> family{complete_graph(4)};
  ScanOptions o;
  o.alphas = {0.1, 0.8};
  const auto r = cutoff_ratio(cutoff_scan(family, o), 0.1, 0.8);
  CHECK_FALSE(r.entries[0].ratio.has_value());
  CHECK_FALSE(r.entries[0].note.empty());
}

TEST_CASE("scan rows are consistent") {
  const std::vector<Graph> family{random_regular({200, 3, 1, 1000}), random_regular({400, 3, 1, 1000}),
                                  petersen_graph()};
  ScanOptions o;
  o.starts_per_graph = 3;
  const auto scan = cutoff_scan(family, o);
  // Two non-transitive graphs with three starts each, plus one transitive graph.
  CHECK(scan.rows.size() == 7);
  for (const auto& row : scan.rows) {
    for (std::size_t i = 1; i < scan.alphas.size(); ++i) {
      CHECK(row.t_mix[i] <= row.t_mix[i - 1]);
      CHECK(cutoff_window(scan, row, scan.alphas[i - 1], scan.alphas[i]) >= 0);
    }
    for (std::size_t i = 0; i < scan.alphas.size(); ++i) {
      CHECK(static_cast<double>(row.t_mix[i]) <= row.spectral_ub[i] + 1.0);
      CHECK(row.t_mix2[i] <= row.t_mix[i]);
    }
  }
  CHECK_THROWS_AS(cutoff_scan(std::vector<Graph>{complete_graph(4), complete_graph(5)}), ValidationError);
}

TEST_CASE("scan output does not depend on the thread count") {
  const std::vector<Graph> family{random_regular({300, 4, 2, 1000}), circulant_graph(101, {1, 2}),
                                  random_regular({600, 4, 2, 1000})};
  ScanOptions one, many;
  many.threads = 4;
  const auto a = cutoff_scan(family, one);
  const auto b = cutoff_scan(family, many);
  CHECK(scan_csv(a) == scan_csv(b));
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("trend check") {
  const std::vector<double> down{3, 2, 2, 1};
  const auto t = trend_check(down, 1.5);
  CHECK(t.non_increasing);
  CHECK_FALSE(t.strictly_decreasing);
  CHECK(t.pass());
  const std::vector<double> up{1, 2};
  CHECK_FALSE(trend_check(up, 5).pass());
  CHECK_FALSE(trend_check(down, 0.5).pass());
}

TEST_CASE("entropy at mixing on K4") {
  const auto quarter = entropy_at_mixing(complete_graph(4), 0, std::vector<double>{0.25});
  CHECK(quarter[0].t_mix == 1);
  CHECK(quarter[0].h_ratio == doctest::Approx(0.792).epsilon(1e-3));

  const std::vector<double> eps{0.3, 0.2};
  const auto rows = entropy_at_mixing(complete_graph(4), 0, eps);
  // T_mix(0.7) = 1 and H(1) = log 3; T_mix(0.8) = 0.
  CHECK(rows[0].t_mix == 1);
  CHECK(rows[0].h_ratio == doctest::Approx(std::log(3.0) / std::log(4.0)));
  CHECK(rows[1].t_mix == 0);
  CHECK(rows[1].h_ratio == 0.0);
  for (const auto& r : rows) CHECK(r.half_bound_holds);
}

TEST_CASE("entropy at mixing bound on an expander") {
  const auto lps = lps_graph({17, 13});
  const std::vector<double> eps{0.05, 0.1, 0.25, 0.5};
  for (const auto& r : entropy_at_mixing(lps.graph, 0, eps)) {
    CHECK(r.half_bound_holds);
    CHECK(r.h_ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("f window") {
  const auto k4 = complete_graph(4);
  const auto empty = f_window_report(k4, spectral_report(k4), 0.1);
  CHECK(empty.empty);
  CHECK(empty.rows.empty());

  const auto lps = lps_graph({5, 61});
  SpectralOptions iter;
  iter.method = EigenMethod::iterative;
  const auto spec = spectral_report(lps.graph, iter);
  const auto rep = f_window_report(lps.graph, spec, 0.15);
  CHECK_FALSE(rep.empty);
  CHECK_FALSE(rep.rows.empty());
  CHECK(rep.all_pass());

  const auto circ = circulant_graph(401, {1, 2, 3});
  CHECK_THROWS_AS(f_window_report(circ, spectral_report(circ), 0.1), ValidationError);
  CHECK_THROWS_AS(f_window_report(lps.graph, spectral_report(k4), 0.1), ValidationError);
}

TEST_CASE("smb concentration edge cases") {
  const auto pet = petersen_graph();
  // At t = 0 the level set {x : -log mu(x) < 0} is empty.
  const auto r0 = smb_concentration(pet, 0, 0, 0.1, 0.1);
  CHECK(r0.mass == 0.0);
  CHECK_FALSE(r0.pass);
  // Far past mixing the law is nearly uniform and every vertex is in the set.
  const auto late = smb_concentration(pet, 0, 60, 0.1, 0.1);
  CHECK(late.mass == doctest::Approx(1.0));
  CHECK(late.pass);
  CHECK(late.radius == 1);
  CHECK_THROWS_AS(smb_concentration(pet, 0, 5, -0.1, 0.1), ValidationError);
  CHECK_THROWS_AS(smb_concentration(pet, 0, 5, 0.1, 1.5), ValidationError);
}

TEST_CASE("walk passage") {
  const std::vector<double> alphas{0.5, 0.1};
  const auto p = walk_passage(petersen_graph(), 0, alphas, 200);
  CHECK(p.tv[0] == mixing_time_tv(petersen_graph(), 0, 0.5));
  CHECK(p.tv[1] == mixing_time_tv(petersen_graph(), 0, 0.1));
  CHECK(p.hellinger[1] == mixing_time_hellinger(petersen_graph(), 0, 0.1));
  CHECK_THROWS_AS(walk_passage(petersen_graph(), 0, alphas, 1), NumericalError);
}

}  // TEST_SUITE
