#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcut/graph.hpp"
#include "rcut/spectral.hpp"

namespace rcut {

// First-passage times of one walk below a list of thresholds, computed in a
// single pass.
struct WalkPassage {
  std::vector<std::size_t> tv;          // min{t : tv(mu^t, pi) < alpha_i}
  std::vector<std::size_t> hellinger;   // min{t : hell2(mu^t, pi) < 2 alpha_i}
  std::vector<double> entropy;          // H(t) for t = 0..last step taken
};

// Throws NumericalError if some threshold is not reached within `cap` steps.
WalkPassage walk_passage(const Graph& graph, Vertex start, std::span<const double> alphas, std::size_t cap);

struct ScanOptions {
  std::vector<double> alphas{0.05, 0.1, 0.25, 0.5, 0.75, 0.9};
  std::vector<double> eps{0.1, 0.25};
  // Starts used for graphs not declared vertex-transitive (lowest ids).
  std::size_t starts_per_graph = 5;
  std::size_t threads = 1;
  SpectralOptions spectral;
};

struct ScanRow {
  std::string label;
  std::size_t graph_index = 0;  // position in the scanned family
  std::size_t n = 0;
  std::size_t d = 0;
  double rho = 0.0;
  Vertex start = 0;
  std::vector<std::size_t> t_mix;         // per alpha
  std::vector<std::size_t> t_mix2;        // per alpha
  std::vector<double> normalized_time;    // t_mix * h_d / log n, per alpha
  std::vector<double> spectral_ub;        // per alpha
  double entropic_lb = 0.0;
  std::vector<std::size_t> t_mix_eps;     // T_mix(1 - eps), per eps
  std::vector<double> h_at_mix;           // H(T_mix(1 - eps)) / log n, per eps
};

struct CutoffScan {
  std::vector<double> alphas;
  std::vector<double> eps;
  std::size_t d = 0;
  double h_d = 0.0;
  std::vector<ScanRow> rows;  // graph order, then start order
  // How start vertices were chosen, per graph label.
  std::vector<std::string> start_notes;
};

// All graphs must share the same degree. One start for graphs declared
// vertex-transitive, otherwise the first `starts_per_graph` ids.
CutoffScan cutoff_scan(std::span<const Graph> family, const ScanOptions& options = {});

// T_mix(alpha) - T_mix(alpha') for alpha < alpha'.
std::size_t cutoff_window(const CutoffScan& scan, const ScanRow& row, double alpha, double alpha_prime);

struct RatioEntry {
  std::string label;
  std::size_t n = 0;
  Vertex start = 0;
  std::optional<double> ratio;  // empty when T_mix(alpha') = 0
  std::string note;
};

struct CutoffRatios {
  double alpha = 0.0;
  double alpha_prime = 0.0;
  std::vector<RatioEntry> entries;
};

// T_mix(alpha) / T_mix(alpha') per row. Both values must be on the scan grid.
CutoffRatios cutoff_ratio(const CutoffScan& scan, double alpha, double alpha_prime);

// Weak monotonicity of a sequence ordered by graph size, plus a bound on
// its last member.
struct TrendCheck {
  bool non_increasing = false;
  bool strictly_decreasing = false;
  double final_value = 0.0;
  double final_threshold = 0.0;
  bool final_ok = false;
  bool pass() const noexcept { return non_increasing && final_ok; }
};

TrendCheck trend_check(std::span<const double> values, double final_threshold);

struct EntropyAtMixingRow {
  double eps = 0.0;
  std::size_t t_mix = 0;            // T_mix(1 - eps)
  double h_ratio = 0.0;             // H(T_mix(1 - eps)) / log n
  // With delta = eps: H(T_mix(delta/2)) against (1 - delta)(log n + log(delta/2)).
  std::size_t t_half = 0;
  double h_at_half = 0.0;
  double half_bound = 0.0;
  bool half_bound_holds = false;
};

std::vector<EntropyAtMixingRow> entropy_at_mixing(const Graph& graph, Vertex start, std::span<const double> eps_grid,
                                                  const std::optional<double>& rho = std::nullopt);

struct FWindowRow {
  std::size_t t = 0;
  double e_sqrt_f = 0.0;
  double tree_e_sqrt_f = 0.0;
  double chain_bound = 0.0;  // <xi_{t-1}, pi^{1/2}> + rho
  double slack = 0.0;        // ((d-1)/d)^{t-1} + 1e-9
  bool upper_ok = false;     // e_sqrt_f <= chain_bound
  bool lower_ok = false;     // e_sqrt_f >= tree value - slack
  bool in_window = false;    // rho_d - eps <= tree value and e_sqrt_f <= rho_d + eps
};

struct FWindowReport {
  double eps = 0.0;
  double rho = 0.0;
  double rho_d = 0.0;
  std::optional<std::size_t> t_eps;  // first t with the tree value within eps of rho_d
  std::size_t t_mix2 = 0;            // T^{mix,2}(1 - eps)
  bool empty = true;                 // t_eps > t_mix2
  std::vector<FWindowRow> rows;
  bool all_pass() const noexcept;
};

// Requires a Ramanujan certificate (spectrum.is_ramanujan).
FWindowReport f_window_report(const Graph& graph, const SpectralReport& spectrum, double eps, Vertex start = 0);

struct SmbResult {
  std::size_t t = 0;
  double delta = 0.0;
  double kappa = 0.0;
  std::size_t radius = 0;  // ceil(delta log n)
  double level_threshold = 0.0;
  double mass = 0.0;
  bool pass = false;  // mass > 1 - kappa
};

// mu^t(N_r({x : -log mu^t(x) < H(t) + delta t})) with r = ceil(delta log n).
SmbResult smb_concentration(const Graph& graph, Vertex start, std::size_t t, double delta, double kappa);

}  // namespace rcut
