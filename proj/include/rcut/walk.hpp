#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rcut/dist.hpp"
#include "rcut/graph.hpp"

namespace rcut {

// (1/2) sum |nu - eta|.
double tv_distance(const Dist& nu, const Dist& eta);
double l1_distance(const Dist& nu, const Dist& eta);
// sum (sqrt(nu) - sqrt(eta))^2, in [0, 2].
double hellinger_sq(const Dist& nu, const Dist& eta);
// Shannon entropy in nats, 0 log 0 = 0.
double entropy(const Dist& nu);
// <nu^{1/2}, eta^{1/2}>.
double sqrt_overlap(const Dist& nu, const Dist& eta);

// Exact law of the simple random walk, two steps retained.
class WalkStream {
 public:
  WalkStream(const Graph& graph, Vertex start);

  void step();
  std::size_t t() const noexcept { return t_; }
  const Dist& current() const noexcept { return current_; }
  // Law at t-1; equal to current() at t = 0.
  const Dist& previous() const noexcept { return previous_; }

 private:
  const Graph* graph_;
  std::size_t t_ = 0;
  Dist current_;
  Dist previous_;
};

struct EvolveOptions {
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
};

// mu^0 .. mu^T. Throws ResourceError if retaining them would exceed the
// budget; use WalkStream instead.
std::vector<Dist> evolve(const Graph& graph, Vertex start, std::size_t steps, const EvolveOptions& options = {});

// Statistics of f_t = mu^t(X^t) / mu^{t-1}(X^{t-1}) under the exact joint
// law P(X^{t-1} = x, X^t = y) = mu^{t-1}(x) / d over adjacent pairs.
struct FStats {
  double e_f = 0.0;
  double e_sqrt_f = 0.0;
  double min_f = 0.0;
  double e_neg_log_f = 0.0;
};

// Requires cur = P prev to within 1e-10 (max norm).
FStats f_stats(const Graph& graph, const Dist& prev, const Dist& cur);

// <P xi_{t-1}, xi_t> with xi = sqrt(mu).
double sqrt_transition_overlap(const Graph& graph, const Dist& prev, const Dist& cur);

struct ProfileRow {
  std::size_t t = 0;
  double tv = 0.0;
  double hell2 = 0.0;
  double entropy = 0.0;
  // f statistics are defined from t = 1; NaN at t = 0.
  double e_f = 0.0;
  double e_sqrt_f = 0.0;
  double min_f = 0.0;
  double e_neg_log_f = 0.0;
  std::size_t support_size = 0;
};

struct MixingProfile {
  Vertex start = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<ProfileRow> rows;
};

MixingProfile mixing_profile(const Graph& graph, Vertex start, std::size_t steps);

// (d - 2) log(d - 1) / d.
double tree_entropy_rate(std::size_t d);

struct MixBounds {
  double h_d = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  // log n / h_d; the o(log n) correction is not included.
  double entropic_lb = 0.0;
  // (log n + 2 log(1/(2 alpha))) / (-2 log rho), from ||mu^t - pi||_1 <= sqrt(n) rho^t.
  double spectral_ub = 0.0;
};

MixBounds mix_bounds(std::size_t n, std::size_t d, double rho, double alpha);
MixBounds mix_bounds(const Graph& graph, double rho, double alpha);

struct MixOptions {
  // Used for the step cap; computed with spectral_report() when absent.
  std::optional<double> rho;
  // Overrides the default cap of 10 * spectral_ub(alpha).
  std::optional<std::size_t> step_cap;
};

std::size_t step_cap(const Graph& graph, double alpha, const MixOptions& options);

// min{t : ||mu^t - pi||_TV < alpha}.
std::size_t mixing_time_tv(const Graph& graph, Vertex start, double alpha, const MixOptions& options = {});
// min{t : ||(mu^t)^{1/2} - pi^{1/2}||_2^2 < 2 alpha}.
std::size_t mixing_time_hellinger(const Graph& graph, Vertex start, double alpha, const MixOptions& options = {});

// mu(N_radius({x : -log mu(x) < threshold})).
double neg_log_level_measure(const Dist& mu, double threshold, const Graph& graph, std::size_t radius);

}  // namespace rcut
