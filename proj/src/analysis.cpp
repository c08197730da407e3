#include "rcut/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcut/error.hpp"
#include "rcut/numeric.hpp"
#include "rcut/parallel.hpp"
#include "rcut/tree.hpp"
#include "rcut/walk.hpp"

namespace rcut {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

std::size_t grid_index(std::span<const double> grid, double value, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid[i] - value) <= 1e-12) return i;
  }
  throw ValidationError(std::string(what) + " " + std::to_string(value) + " is not on the scan grid");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
}

}  // namespace

WalkPassage walk_passage(const Graph& graph, Vertex start, std::span<const double> alphas, std::size_t cap) {
  for (double a : alphas) check_alpha(a);
  const Dist pi = Dist::uniform(graph.n());
  WalkPassage out;
  out.tv.assign(alphas.size(), kUnset);
  out.hellinger.assign(alphas.size(), kUnset);
  WalkStream walk(graph, start);
  std::size_t open = 2 * alphas.size();
  while (true) {
    const Dist& mu = walk.current();
    out.entropy.push_back(entropy(mu));
    const double tv = tv_distance(mu, pi);
    const double hell2 = hellinger_sq(mu, pi);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (out.tv[i] == kUnset && tv < alphas[i]) {
        out.tv[i] = walk.t();
        --open;
      }
      if (out.hellinger[i] == kUnset && hell2 < 2.0 * alphas[i]) {
        out.hellinger[i] = walk.t();
        --open;
      }
    }
    if (open == 0) break;
    if (walk.t() >= cap) {
      throw NumericalError("mixing threshold not reached within the step cap of " + std::to_string(cap), tv);
    }
    walk.step();
  }
  return out;
}

CutoffScan cutoff_scan(std::span<const Graph> family, const ScanOptions& options) {
  if (family.empty()) throw ValidationError("empty family");
  if (options.alphas.empty()) throw ValidationError("empty alpha grid");
  for (double e : options.eps) {
    if (!(e > 0.0 && e < 1.0)) throw ValidationError("eps must lie in (0, 1)");
  }
  CutoffScan scan;
  scan.alphas = options.alphas;
  scan.eps = options.eps;
  scan.d = family.front().d();
  for (const auto& g : family) {
    if (g.d() != scan.d) throw ValidationError("family mixes degrees " + std::to_string(scan.d) + " and " +
                                               std::to_string(g.d()));
    require_admissible(g);
  }
  scan.h_d = tree_entropy_rate(scan.d);

  // Thresholds searched in one pass: the alpha grid followed by 1 - eps.
  std::vector<double> thresholds = options.alphas;
  for (double e : options.eps) thresholds.push_back(1.0 - e);
  const double smallest = *std::min_element(thresholds.begin(), thresholds.end());

  struct Job {
    std::size_t graph;
    Vertex start;
  };
  std::vector<Job> jobs;
  std::vector<double> rhos(family.size());
  for (std::size_t gi = 0; gi < family.size(); ++gi) {
    const auto& g = family[gi];
    rhos[gi] = spectral_report(g, options.spectral).rho;
    const std::string label = g.provenance().family.empty() ? "graph" + std::to_string(gi) : g.provenance().family;
    if (g.provenance().vertex_transitive) {
      jobs.push_back({gi, 0});
      scan.start_notes.push_back(label + ": vertex-transitive, start 0");
    } else {
      const std::size_t k = std::min(options.starts_per_graph, g.n());
      for (std::size_t s = 0; s < k; ++s) jobs.push_back({gi, static_cast<Vertex>(s)});
      scan.start_notes.push_back(label + ": starts 0.." + std::to_string(k - 1));
    }
  }

  scan.rows = parallel_map<ScanRow>(jobs.size(), options.threads, [&](std::size_t j) {
    const auto& g = family[jobs[j].graph];
    const double rho = rhos[jobs[j].graph];
    const std::size_t cap = step_cap(g, smallest, MixOptions{rho, std::nullopt});
    const auto passage = walk_passage(g, jobs[j].start, thresholds, cap);
    const double log_n = std::log(static_cast<double>(g.n()));
    ScanRow row;
    row.label = g.provenance().family.empty() ? "graph" + std::to_string(jobs[j].graph) : g.provenance().family;
    row.graph_index = jobs[j].graph;
    row.n = g.n();
    row.d = g.d();
    row.rho = rho;
    row.start = jobs[j].start;
    row.entropic_lb = log_n / scan.h_d;
    for (std::size_t i = 0; i < options.alphas.size(); ++i) {
      row.t_mix.push_back(passage.tv[i]);
      row.t_mix2.push_back(passage.hellinger[i]);
      row.normalized_time.push_back(static_cast<double>(passage.tv[i]) * scan.h_d / log_n);
      row.spectral_ub.push_back(mix_bounds(g, rho, options.alphas[i]).spectral_ub);
    }
    for (std::size_t e = 0; e < options.eps.size(); ++e) {
      const std::size_t t = passage.tv[options.alphas.size() + e];
      row.t_mix_eps.push_back(t);
      row.h_at_mix.push_back(passage.entropy[t] / log_n);
    }
    return row;
  });
  return scan;
}

std::size_t cutoff_window(const CutoffScan& scan, const ScanRow& row, double alpha, double alpha_prime) {
  if (!(alpha < alpha_prime)) throw ValidationError("cutoff window needs alpha < alpha'");
  const std::size_t i = grid_index(scan.alphas, alpha, "alpha");
  const std::size_t j = grid_index(scan.alphas, alpha_prime, "alpha'");
  return row.t_mix[i] - row.t_mix[j];
}

CutoffRatios cutoff_ratio(const CutoffScan& scan, double alpha, double alpha_prime) {
  const std::size_t i = grid_index(scan.alphas, alpha, "alpha");
  const std::size_t j = grid_index(scan.alphas, alpha_prime, "alpha'");
  CutoffRatios out;
  out.alpha = alpha;
  out.alpha_prime = alpha_prime;
  for (const auto& row : scan.rows) {
    RatioEntry e{row.label, row.n, row.start, std::nullopt, {}};
    if (row.t_mix[j] == 0) {
      e.note = "T_mix(alpha') = 0; excluded";
    } else {
      e.ratio = static_cast<double>(row.t_mix[i]) / static_cast<double>(row.t_mix[j]);
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

TrendCheck trend_check(std::span<const double> values, double final_threshold) {
  if (values.empty()) throw ValidationError("trend of an empty sequence");
  TrendCheck c;
  c.non_increasing = true;
  c.strictly_decreasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1]) c.non_increasing = false;
    if (values[i] >= values[i - 1]) c.strictly_decreasing = false;
  }
  c.final_value = values.back();
  c.final_threshold = final_threshold;
  c.final_ok = c.final_value <= final_threshold;
  return c;
}

std::vector<EntropyAtMixingRow> entropy_at_mixing(const Graph& graph, Vertex start, std::span<const double> eps_grid,
                                                  const std::optional<double>& rho) {
  require_admissible(graph);
  std::vector<double> thresholds;
  for (double e : eps_grid) {
    if (!(e > 0.0 && e < 1.0)) throw ValidationError("eps must lie in (0, 1)");
    thresholds.push_back(1.0 - e);
    thresholds.push_back(e / 2.0);
  }
  const double smallest = thresholds.empty() ? 0.5 : *std::min_element(thresholds.begin(), thresholds.end());
  const std::size_t cap = step_cap(graph, smallest, MixOptions{rho, std::nullopt});
  const auto passage = walk_passage(graph, start, thresholds, cap);
  const double log_n = std::log(static_cast<double>(graph.n()));
  std::vector<EntropyAtMixingRow> rows;
  for (std::size_t k = 0; k < eps_grid.size(); ++k) {
    const double eps = eps_grid[k];
    EntropyAtMixingRow r;
    r.eps = eps;
    r.t_mix = passage.tv[2 * k];
    r.h_ratio = passage.entropy[r.t_mix] / log_n;
    r.t_half = passage.tv[2 * k + 1];
    r.h_at_half = passage.entropy[r.t_half];
    r.half_bound = (1.0 - eps) * (log_n + std::log(eps / 2.0));
    r.half_bound_holds = r.h_at_half >= r.half_bound - 1e-12;
    rows.push_back(r);
  }
  return rows;
}

bool FWindowReport::all_pass() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const FWindowRow& r) { return r.upper_ok && r.lower_ok; });
}

FWindowReport f_window_report(const Graph& graph, const SpectralReport& spectrum, double eps, Vertex start) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0, 1)");
  if (!spectrum.is_ramanujan) {
    throw ValidationError("the window report needs a Ramanujan certificate; rho = " + std::to_string(spectrum.rho) +
                          " exceeds rho_d = " + std::to_string(spectrum.rho_d));
  }
  if (spectrum.n != graph.n() || spectrum.d != graph.d()) throw ValidationError("spectral report is for another graph");
  const std::size_t d = graph.d();
  FWindowReport rep;
  rep.eps = eps;
  rep.rho = spectrum.rho;
  rep.rho_d = spectrum.rho_d;
  rep.t_mix2 = mixing_time_hellinger(graph, start, 1.0 - eps, MixOptions{spectrum.rho, std::nullopt});
  // The tree statistic converges, so scanning a few thousand steps suffices
  // for any eps the window report is used with.
  rep.t_eps = tree_threshold_time(d, eps, 100000);
  rep.empty = !rep.t_eps || *rep.t_eps > rep.t_mix2;
  if (rep.empty) return rep;

  const Dist pi = Dist::uniform(graph.n());
  WalkStream walk(graph, start);
  RadialDist tree_prev = tree_origin(d);
  for (std::size_t t = 1; t <= rep.t_mix2; ++t) {
    walk.step();
    RadialDist tree_cur = tree_step(tree_prev);
    if (t >= *rep.t_eps) {
      FWindowRow row;
      row.t = t;
      row.e_sqrt_f = f_stats(graph, walk.previous(), walk.current()).e_sqrt_f;
      row.tree_e_sqrt_f = tree_f_stats(tree_prev, tree_cur).e_sqrt_f;
      row.chain_bound = sqrt_overlap(walk.previous(), pi) + spectrum.rho;
      row.slack = std::pow(static_cast<double>(d - 1) / static_cast<double>(d), static_cast<double>(t - 1)) + 1e-9;
      row.upper_ok = row.e_sqrt_f <= row.chain_bound + 1e-12;
      row.lower_ok = row.e_sqrt_f >= row.tree_e_sqrt_f - row.slack;
      row.in_window = row.tree_e_sqrt_f >= rep.rho_d - eps && row.e_sqrt_f <= rep.rho_d + eps;
      rep.rows.push_back(row);
    }
    tree_prev = std::move(tree_cur);
  }
  return rep;
}

SmbResult smb_concentration(const Graph& graph, Vertex start, std::size_t t, double delta, double kappa) {
  if (!(delta >= 0.0)) throw ValidationError("delta must be nonnegative");
  if (!(kappa > 0.0 && kappa < 1.0)) throw ValidationError("kappa must lie in (0, 1)");
  WalkStream walk(graph, start);
  for (std::size_t s = 0; s < t; ++s) walk.step();
  SmbResult r;
  r.t = t;
  r.delta = delta;
  r.kappa = kappa;
  r.radius = static_cast<std::size_t>(std::ceil(delta * std::log(static_cast<double>(graph.n()))));
  r.level_threshold = entropy(walk.current()) + delta * static_cast<double>(t);
  r.mass = neg_log_level_measure(walk.current(), r.level_threshold, graph, r.radius);
  r.pass = r.mass > 1.0 - kappa;
  return r;
}

}  // namespace rcut
