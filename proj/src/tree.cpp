#include "rcut/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcut/error.hpp"
#include "rcut/numeric.hpp"
#include "rcut/spectral.hpp"

namespace rcut {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void require_degree(std::size_t d) {
  if (d < 3) throw ValidationError("d >= 3 required");
}

}  // namespace

double RadialDist::q(std::size_t r) const { return r < log_q.size() ? std::exp(log_q[r]) : 0.0; }

double log_sphere_size(std::size_t d, std::size_t r) {
  if (r == 0) return 0.0;
  return std::log(static_cast<double>(d)) + static_cast<double>(r - 1) * std::log(static_cast<double>(d - 1));
}

RadialDist tree_origin(std::size_t d) {
  require_degree(d);
  return RadialDist{d, 0, {0.0}};
}

RadialDist tree_step(const RadialDist& prev) {
  const std::size_t d = prev.d;
  const double log_out = std::log(static_cast<double>(d - 1) / static_cast<double>(d));
  const double log_in = -std::log(static_cast<double>(d));
  RadialDist next{d, prev.t + 1, std::vector<double>(prev.log_q.size() + 1, kNegInf)};
  for (std::size_t r = 0; r < prev.log_q.size(); ++r) {
    const double lq = prev.log_q[r];
    if (lq == kNegInf) continue;
    if (r == 0) {
      next.log_q[1] = log_add(next.log_q[1], lq);
    } else {
      next.log_q[r + 1] = log_add(next.log_q[r + 1], lq + log_out);
      next.log_q[r - 1] = log_add(next.log_q[r - 1], lq + log_in);
    }
  }
  return next;
}

std::vector<RadialDist> tree_evolve(std::size_t d, std::size_t steps) {
  std::vector<RadialDist> out;
  out.reserve(steps + 1);
  out.push_back(tree_origin(d));
  for (std::size_t t = 0; t < steps; ++t) out.push_back(tree_step(out.back()));
  return out;
}

double tree_entropy(const RadialDist& dist) {
  CompensatedSum s;
  for (std::size_t r = 0; r < dist.log_q.size(); ++r) {
    const double lq = dist.log_q[r];
    if (lq == kNegInf) continue;
    s += -std::exp(lq) * (lq - log_sphere_size(dist.d, r));
  }
  return s.value();
}

double tree_entropy(std::size_t d, std::size_t t) {
  RadialDist dist = tree_origin(d);
  for (std::size_t i = 0; i < t; ++i) dist = tree_step(dist);
  return tree_entropy(dist);
}

TreeFStats tree_f_stats(const RadialDist& prev, const RadialDist& cur) {
  if (cur.t != prev.t + 1 || cur.d != prev.d) throw ValidationError("tree_f_stats needs consecutive laws");
  const std::size_t d = prev.d;
  const double log_out = std::log(static_cast<double>(d - 1) / static_cast<double>(d));
  const double log_in = -std::log(static_cast<double>(d));
  CompensatedSum e_f, e_sqrt_f, e_neg_log_f;
  double min_f = std::numeric_limits<double>::infinity();

  auto add_pair = [&](std::size_t r, std::size_t r_next, double log_weight) {
    // Per-vertex masses before and after the step.
    const double log_before = prev.log_q[r] - log_sphere_size(d, r);
    const double log_after = cur.log_q[r_next] - log_sphere_size(d, r_next);
    const double log_f = log_after - log_before;
    e_f += std::exp(log_weight + log_f);
    e_sqrt_f += std::exp(log_weight + 0.5 * log_f);
    e_neg_log_f += -std::exp(log_weight) * log_f;
    min_f = std::min(min_f, std::exp(log_f));
  };

  for (std::size_t r = 0; r < prev.log_q.size(); ++r) {
    const double lq = prev.log_q[r];
    if (lq == kNegInf) continue;
    if (r == 0) {
      add_pair(0, 1, lq);
    } else {
      add_pair(r, r + 1, lq + log_out);
      add_pair(r, r - 1, lq + log_in);
    }
  }
  return {cur.t, e_neg_log_f.value(), e_sqrt_f.value(), e_f.value(), min_f};
}

TreeFStats tree_f_stats(std::size_t d, std::size_t t) {
  if (t == 0) throw ValidationError("f statistics start at t = 1");
  RadialDist prev = tree_origin(d);
  for (std::size_t i = 0; i + 1 < t; ++i) prev = tree_step(prev);
  return tree_f_stats(prev, tree_step(prev));
}

std::vector<TreeFStats> tree_f_stats_series(std::size_t d, std::size_t steps) {
  std::vector<TreeFStats> out;
  out.reserve(steps);
  RadialDist prev = tree_origin(d);
  for (std::size_t t = 1; t <= steps; ++t) {
    RadialDist cur = tree_step(prev);
    out.push_back(tree_f_stats(prev, cur));
    prev = std::move(cur);
  }
  return out;
}

std::optional<std::size_t> tree_threshold_time(std::size_t d, double eps, std::size_t max_steps) {
  const double rho_d = alon_boppana(d);
  RadialDist prev = tree_origin(d);
  for (std::size_t t = 1; t <= max_steps; ++t) {
    RadialDist cur = tree_step(prev);
    if (std::abs(tree_f_stats(prev, cur).e_sqrt_f - rho_d) <= eps) return t;
    prev = std::move(cur);
  }
  return std::nullopt;
}

}  // namespace rcut
