#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace rcut {

// Law of the distance from the origin after t steps of the simple random
// walk on the d-regular tree. Masses are stored as logarithms (-inf for
// zero) so that long runs do not underflow; the per-vertex mass at radius
// r is q(r) / N(r) with N(0) = 1, N(r) = d (d-1)^(r-1).
struct RadialDist {
  std::size_t d = 3;
  std::size_t t = 0;
  std::vector<double> log_q;  // radius 0..t

  double q(std::size_t r) const;
  std::size_t max_radius() const noexcept { return log_q.size() - 1; }
};

double log_sphere_size(std::size_t d, std::size_t r);

RadialDist tree_origin(std::size_t d);
RadialDist tree_step(const RadialDist& prev);
std::vector<RadialDist> tree_evolve(std::size_t d, std::size_t steps);

// -sum_r q(r) log(q(r) / N(r)).
double tree_entropy(const RadialDist& dist);
double tree_entropy(std::size_t d, std::size_t t);

struct TreeFStats {
  std::size_t t = 0;
  double e_neg_log_f = 0.0;
  double e_sqrt_f = 0.0;
  double e_f = 0.0;
  double min_f = 0.0;
};

// Exact expectations over the radial pairs (r -> r +- 1) between two
// consecutive laws.
TreeFStats tree_f_stats(const RadialDist& prev, const RadialDist& cur);
TreeFStats tree_f_stats(std::size_t d, std::size_t t);
// Stats for t = 1..steps.
std::vector<TreeFStats> tree_f_stats_series(std::size_t d, std::size_t steps);

// First t >= 1 with |E[f_t^{1/2}] - rho_d| <= eps, scanning up to max_steps.
std::optional<std::size_t> tree_threshold_time(std::size_t d, double eps, std::size_t max_steps = 100000);

}  // namespace rcut
