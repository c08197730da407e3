#include "rcut/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rcut/error.hpp"
#include "rcut/numeric.hpp"
#include "rcut/spectral.hpp"

namespace rcut {
namespace {

void require_same_size(const Dist& a, const Dist& b) {
  if (a.size() != b.size()) {
    throw ValidationError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

double l1_distance(const Dist& nu, const Dist& eta) {
  require_same_size(nu, eta);
  CompensatedSum s;
  for (std::size_t x = 0; x < nu.size(); ++x) s += std::abs(nu[x] - eta[x]);
  return s.value();
}

double tv_distance(const Dist& nu, const Dist& eta) { return 0.5 * l1_distance(nu, eta); }

double hellinger_sq(const Dist& nu, const Dist& eta) {
  require_same_size(nu, eta);
  CompensatedSum s;
  for (std::size_t x = 0; x < nu.size(); ++x) {
    const double diff = std::sqrt(nu[x]) - std::sqrt(eta[x]);
    s += diff * diff;
  }
  return s.value();
}

double entropy(const Dist& nu) {
  CompensatedSum s;
  for (double m : nu.mass()) s += -xlogx(m);
  return s.value();
}

double sqrt_overlap(const Dist& nu, const Dist& eta) {
  require_same_size(nu, eta);
  CompensatedSum s;
  for (std::size_t x = 0; x < nu.size(); ++x) s += std::sqrt(nu[x] * eta[x]);
  return s.value();
}

WalkStream::WalkStream(const Graph& graph, Vertex start)
    : graph_(&graph), current_(Dist::delta(graph.n(), start)), previous_(current_) {}

void WalkStream::step() {
  previous_ = std::move(current_);
  current_ = apply_P(*graph_, previous_);
  ++t_;
}

std::vector<Dist> evolve(const Graph& graph, Vertex start, std::size_t steps, const EvolveOptions& options) {
  const double bytes = static_cast<double>(steps + 1) * static_cast<double>(graph.n()) * sizeof(double);
  if (bytes > static_cast<double>(options.memory_budget_bytes)) {
    throw ResourceError("retaining " + std::to_string(steps + 1) + " distributions over " + std::to_string(graph.n()) +
                        " vertices exceeds the memory budget; use streaming evolution (WalkStream)");
  }
  if (start >= graph.n()) throw ValidationError("start vertex out of range");
  std::vector<Dist> out;
  out.reserve(steps + 1);
  out.push_back(Dist::delta(graph.n(), start));
  for (std::size_t t = 0; t < steps; ++t) out.push_back(apply_P(graph, out.back()));
  return out;
}

FStats f_stats(const Graph& graph, const Dist& prev, const Dist& cur) {
  if (prev.size() != graph.n()) throw ValidationError("dimension mismatch between distribution and graph");
  require_same_size(prev, cur);
  {
    const Dist expected = apply_P(graph, prev);
    double worst = 0.0;
    for (std::size_t x = 0; x < cur.size(); ++x) worst = std::max(worst, std::abs(expected[x] - cur[x]));
    if (worst > 1e-10) {
      throw ValidationError("f_stats precondition violated: current law differs from P * previous by " +
                            std::to_string(worst));
    }
  }
  const double inv_d = 1.0 / static_cast<double>(graph.d());
  CompensatedSum e_f, e_sqrt_f, e_neg_log_f;
  double min_f = std::numeric_limits<double>::infinity();
  for (Vertex x = 0; x < graph.n(); ++x) {
    const double px = prev[x];
    if (!(px > 0.0)) continue;
    const double log_px = std::log(px);
    for (Vertex y : graph.neighbors(x)) {
      const double cy = cur[y];
      e_f += cy * inv_d;
      e_sqrt_f += std::sqrt(px * cy) * inv_d;
      e_neg_log_f += px * inv_d * (log_px - std::log(cy));
      min_f = std::min(min_f, cy / px);
    }
  }
  return {e_f.value(), e_sqrt_f.value(), min_f, e_neg_log_f.value()};
}

double sqrt_transition_overlap(const Graph& graph, const Dist& prev, const Dist& cur) {
  require_same_size(prev, cur);
  std::vector<double> xi(prev.size());
  for (std::size_t x = 0; x < xi.size(); ++x) xi[x] = std::sqrt(prev[x]);
  std::vector<double> p_xi(prev.size());
  apply_normalized_adjacency(graph, xi, p_xi);
  CompensatedSum s;
  for (std::size_t y = 0; y < xi.size(); ++y) s += p_xi[y] * std::sqrt(cur[y]);
  return s.value();
}

MixingProfile mixing_profile(const Graph& graph, Vertex start, std::size_t steps) {
  MixingProfile profile;
  profile.start = start;
  profile.n = graph.n();
  profile.d = graph.d();
  profile.rows.reserve(steps + 1);
  const Dist pi = Dist::uniform(graph.n());
  WalkStream walk(graph, start);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t t = 0; t <= steps; ++t) {
    if (t > 0) walk.step();
    ProfileRow row;
    row.t = t;
    row.tv = tv_distance(walk.current(), pi);
    row.hell2 = hellinger_sq(walk.current(), pi);
    row.entropy = entropy(walk.current());
    row.support_size = walk.current().support_size();
    if (t == 0) {
      row.e_f = row.e_sqrt_f = row.min_f = row.e_neg_log_f = nan;
    } else {
      const auto fs = f_stats(graph, walk.previous(), walk.current());
      row.e_f = fs.e_f;
      row.e_sqrt_f = fs.e_sqrt_f;
      row.min_f = fs.min_f;
      row.e_neg_log_f = fs.e_neg_log_f;
    }
    profile.rows.push_back(row);
  }
  return profile;
}

double tree_entropy_rate(std::size_t d) {
  const auto dd = static_cast<double>(d);
  return (dd - 2.0) * std::log(dd - 1.0) / dd;
}

MixBounds mix_bounds(std::size_t n, std::size_t d, double rho, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("rho must lie in (0, 1)");
  MixBounds b;
  b.h_d = tree_entropy_rate(d);
  b.alpha = alpha;
  b.rho = rho;
  const double log_n = std::log(static_cast<double>(n));
  b.entropic_lb = log_n / b.h_d;
  b.spectral_ub = (log_n + 2.0 * std::log(1.0 / (2.0 * alpha))) / (-2.0 * std::log(rho));
  return b;
}

MixBounds mix_bounds(const Graph& graph, double rho, double alpha) { return mix_bounds(graph.n(), graph.d(), rho, alpha); }

std::size_t step_cap(const Graph& graph, double alpha, const MixOptions& options) {
  if (options.step_cap) return *options.step_cap;
  const double rho = options.rho ? *options.rho : spectral_report(graph).rho;
  const double ub = mix_bounds(graph, rho, alpha).spectral_ub;
  return static_cast<std::size_t>(std::ceil(10.0 * std::max(ub, 1.0)));
}

namespace {

template <class Distance>
std::size_t first_time_below(const Graph& graph, Vertex start, double alpha, double threshold, const MixOptions& options,
                             Distance distance, const char* what) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (start >= graph.n()) throw ValidationError("start vertex out of range");
  const Dist pi = Dist::uniform(graph.n());
  WalkStream walk(graph, start);
  if (distance(walk.current(), pi) < threshold) return 0;
  const std::size_t cap = step_cap(graph, alpha, options);
  while (walk.t() < cap) {
    walk.step();
    if (distance(walk.current(), pi) < threshold) return walk.t();
  }
  throw NumericalError(std::string(what) + " mixing time exceeds the step cap of " + std::to_string(cap));
}

}  // namespace

std::size_t mixing_time_tv(const Graph& graph, Vertex start, double alpha, const MixOptions& options) {
  return first_time_below(graph, start, alpha, alpha, options, tv_distance, "total variation");
}

std::size_t mixing_time_hellinger(const Graph& graph, Vertex start, double alpha, const MixOptions& options) {
  return first_time_below(graph, start, alpha, 2.0 * alpha, options, hellinger_sq, "Hellinger");
}

double neg_log_level_measure(const Dist& mu, double threshold, const Graph& graph, std::size_t radius) {
  if (mu.size() != graph.n()) throw ValidationError("dimension mismatch between distribution and graph");
  std::vector<Vertex> level;
  for (Vertex x = 0; x < mu.size(); ++x) {
    if (mu[x] > 0.0 && -std::log(mu[x]) < threshold) level.push_back(x);
  }
  if (level.empty()) return 0.0;
  CompensatedSum s;
  for (Vertex x : bfs_neighborhood(graph, level, radius)) s += mu[x];
  return s.value();
}

}  // namespace rcut
