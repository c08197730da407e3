#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rcut/dist.hpp"
#include "rcut/graph.hpp"

namespace rcut {

// Outcome of checking one inequality over a batch of inputs. The margin of
// a trial is (right side - left side) oriented so that >= 0 means the
// inequality holds.
struct CheckReport {
  static constexpr double kTolerance = 1e-9;

  std::string name;
  std::size_t trials = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string worst_case;
  bool pass = true;
  // Smallest observed LHS/RHS where the inequality has a multiplicative
  // form; NaN otherwise.
  double min_ratio = std::numeric_limits<double>::quiet_NaN();

  void record(double margin, const std::string& description);
  void record_ratio(double ratio);
  void merge(const CheckReport& other);
};

enum class SamplerMode { uniform_simplex, sparse_delta_mix, walk_snapshot };

std::string to_string(SamplerMode mode);
SamplerMode parse_sampler_mode(const std::string& s);

// Deterministic source of test measures; trial i always sees the same draw.
struct DistSampler {
  SamplerMode mode = SamplerMode::uniform_simplex;
  std::uint64_t seed = 1;

  // walk_snapshot needs the graph; the other modes only use n.
  Dist sample(std::size_t n, std::size_t trial, const Graph* graph = nullptr) const;
};

// H(P nu) - H(nu) >= c (1 - rho) ||nu - pi||_1^2 with c = 1/16.
struct EntropyProductionTerms {
  double entropy_gain = 0.0;
  double lower_bound = 0.0;
  double margin() const noexcept { return entropy_gain - lower_bound; }
};
EntropyProductionTerms entropy_production_terms(const Graph& graph, double rho, const Dist& nu,
                                                double constant = 1.0 / 16.0);
CheckReport check_entropy_production(const Graph& graph, double rho, const DistSampler& sampler, std::size_t trials,
                                     std::size_t threads = 1, double constant = 1.0 / 16.0);

// H(P nu) - H(nu) >= (1/2) sum_i (1/d) ||(P_i nu)^{1/2} - (P nu)^{1/2}||_2^2,
// together with H(P_i nu) = H(nu).
struct EntconcTerms {
  double entropy_gain = 0.0;
  double lower_bound = 0.0;
  double permutation_entropy_defect = 0.0;  // max_i |H(P_i nu) - H(nu)|
  double margin() const noexcept { return entropy_gain - lower_bound; }
};
EntconcTerms entconc_terms(const Graph& graph, const PermDecomposition& perms, const Dist& nu);
CheckReport check_entconc(const Graph& graph, const PermDecomposition& perms, const DistSampler& sampler,
                          std::size_t trials, std::size_t threads = 1);

// Hellinger / total variation comparisons against the uniform law:
//   (a) hell2 <= ||nu - pi||_1
//   (b) ||nu - pi||_1 <= hell2^{1/2} ||nu^{1/2} + pi^{1/2}||_2
//   (c) hell2 < 2 - eps  implies  ||nu - pi||_1 < 2 - eps^4 / 128, eps in {0.1, 0.5, 1}
struct HellingerTvMargins {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;  // +inf when no eps in the grid triggers the premise
  double min() const noexcept;
};
HellingerTvMargins hellinger_tv_margins(const Dist& nu);
CheckReport check_hellinger_tv(std::span<const std::size_t> sizes, std::size_t trials, std::uint64_t seed,
                               std::size_t threads = 1);

// ||g^{1/2} - f^{1/2}||^2 <= 2 ||f||_inf^{1/2} (E g^{1/2} - E f^{1/2}), g = E[f | blocks].
struct ConditionalSpace {
  std::vector<double> weights;     // atom probabilities
  std::vector<std::size_t> block;  // atom -> partition block
  std::vector<double> f;           // nonnegative values
};
struct SqrtConditionalTerms {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const noexcept { return rhs - lhs; }
};
SqrtConditionalTerms sqrt_conditional_terms(const ConditionalSpace& space);
CheckReport check_sqrt_conditional(std::size_t max_space_size, std::size_t max_partitions, std::size_t trials,
                                   std::uint64_t seed, std::size_t threads = 1);

// min f_t >= 1/d, E f_t <= 1, 1 - E f_t <= ((d-1)/d)^{t-1} for t = 1..steps.
CheckReport check_f_bounds(const Graph& graph, Vertex start, std::size_t steps);

// H(t) - H(t-1) is nonnegative and non-increasing. Only defined for graphs
// whose generator declared them vertex-transitive; others are refused.
CheckReport check_transitive_concavity(const Graph& graph, Vertex start, std::size_t steps);

// Starting from the first walk law with H > (1 - delta) log n, after
// k = ceil(delta^{1/2} log n / (-2 log rho)) further steps the L1 distance
// to uniform is at most 4 delta^{1/2}.
struct RefereeScenario {
  std::size_t entry_time = 0;  // first t with H(t) > (1 - delta) log n
  std::size_t extra_steps = 0;
  double l1_after = 0.0;
  double bound = 0.0;
};
RefereeScenario referee_scenario(const Graph& graph, double rho, double delta, Vertex start = 0);
CheckReport check_referee_scenario(const Graph& graph, double rho, std::span<const double> deltas);

struct SuiteConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 7;
  std::size_t threads = 1;
  bool include_lps = true;
};

// Runs every check on the standard fixtures (K4, Petersen, a random
// 3-regular graph on 100 vertices, LPS(5,29)).
std::vector<CheckReport> run_verify_suite(const SuiteConfig& config);

}  // namespace rcut
