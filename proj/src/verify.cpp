#include "rcut/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rcut/error.hpp"
#include "rcut/generators.hpp"
#include "rcut/numeric.hpp"
#include "rcut/parallel.hpp"
#include "rcut/rng.hpp"
#include "rcut/spectral.hpp"
#include "rcut/tree.hpp"
#include "rcut/walk.hpp"

namespace rcut {

void CheckReport::record(double margin, const std::string& description) {
  ++trials;
  // A NaN margin means the inequality could not be evaluated; count it as a violation.
  if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
  if (margin < min_margin || worst_case.empty()) {
    min_margin = margin;
    worst_case = description;
  }
  pass = min_margin >= -kTolerance;
}

void CheckReport::record_ratio(double ratio) {
  if (std::isnan(min_ratio) || ratio < min_ratio) min_ratio = ratio;
}

void CheckReport::merge(const CheckReport& other) {
  trials += other.trials;
  if (other.min_margin < min_margin) {
    min_margin = other.min_margin;
    worst_case = other.worst_case;
  }
  if (!std::isnan(other.min_ratio)) record_ratio(other.min_ratio);
  pass = min_margin >= -kTolerance;
}

std::string to_string(SamplerMode mode) {
  switch (mode) {
    case SamplerMode::uniform_simplex:
      return "uniform_simplex";
    case SamplerMode::sparse_delta_mix:
      return "sparse_delta_mix";
    case SamplerMode::walk_snapshot:
      return "walk_snapshot";
  }
  return "uniform_simplex";
}

SamplerMode parse_sampler_mode(const std::string& s) {
  if (s == "uniform_simplex") return SamplerMode::uniform_simplex;
  if (s == "sparse_delta_mix") return SamplerMode::sparse_delta_mix;
  if (s == "walk_snapshot") return SamplerMode::walk_snapshot;
  throw ValidationError("unknown sampler mode '" + s + "'");
}

Dist DistSampler::sample(std::size_t n, std::size_t trial, const Graph* graph) const {
  Rng rng(seed, trial);
  switch (mode) {
    case SamplerMode::uniform_simplex: {
      // Dirichlet(1, ..., 1).
      std::vector<double> m(n);
      for (double& x : m) x = rng.exponential();
      const double total = compensated_sum(m);
      for (double& x : m) x /= total;
      return Dist(std::move(m));
    }
    case SamplerMode::sparse_delta_mix: {
      const auto v = static_cast<Vertex>(rng.below(n));
      const double w = rng.uniform_open0();
      std::vector<double> m(n, (1.0 - w) / static_cast<double>(n));
      m[v] += w;
      return Dist(std::move(m));
    }
    case SamplerMode::walk_snapshot: {
      if (graph == nullptr || graph->n() != n) throw ValidationError("walk_snapshot sampling needs the graph");
      const auto start = static_cast<Vertex>(rng.below(n));
      const double horizon = std::log(static_cast<double>(n)) / tree_entropy_rate(graph->d());
      const auto steps = rng.below(static_cast<std::uint64_t>(2.0 * std::ceil(horizon)) + 3);
      WalkStream walk(*graph, start);
      for (std::uint64_t t = 0; t < steps; ++t) walk.step();
      return walk.current();
    }
  }
  throw ValidationError("unknown sampler mode");
}

namespace {

struct TrialOutcome {
  double margin = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  std::string description;
};

CheckReport reduce(std::string name, const std::vector<TrialOutcome>& outcomes) {
  CheckReport report;
  report.name = std::move(name);
  for (const auto& o : outcomes) {
    report.record(o.margin, o.description);
    if (!std::isnan(o.ratio)) report.record_ratio(o.ratio);
  }
  return report;
}

std::string describe(const std::string& graph_label, const DistSampler& sampler, std::size_t trial) {
  std::ostringstream os;
  os << "{\"graph\":\"" << graph_label << "\",\"sampler\":\"" << to_string(sampler.mode) << "\",\"seed\":" << sampler.seed
     << ",\"trial\":" << trial << "}";
  return os.str();
}

double entropy_of(std::span<const double> m) {
  CompensatedSum s;
  for (double x : m) s += -xlogx(x);
  return s.value();
}

}  // namespace

EntropyProductionTerms entropy_production_terms(const Graph& graph, double rho, const Dist& nu, double constant) {
  const Dist next = apply_P(graph, nu);
  const double l1 = l1_distance(nu, Dist::uniform(graph.n()));
  return {entropy(next) - entropy(nu), constant * (1.0 - rho) * l1 * l1};
}

CheckReport check_entropy_production(const Graph& graph, double rho, const DistSampler& sampler, std::size_t trials,
                                     std::size_t threads, double constant) {
  const auto outcomes = parallel_map<TrialOutcome>(trials, threads, [&](std::size_t i) {
    const Dist nu = sampler.sample(graph.n(), i, &graph);
    const auto terms = entropy_production_terms(graph, rho, nu, constant);
    const double ratio = terms.lower_bound > 0.0 ? terms.entropy_gain / terms.lower_bound
                                                 : std::numeric_limits<double>::quiet_NaN();
    return TrialOutcome{terms.margin(), ratio, describe(graph.provenance().family, sampler, i)};
  });
  return reduce("entropy_production[" + graph.provenance().family + "]", outcomes);
}

EntconcTerms entconc_terms(const Graph& graph, const PermDecomposition& perms, const Dist& nu) {
  const std::size_t n = graph.n();
  const Dist avg = apply_P(graph, nu);
  const double h_nu = entropy(nu);
  const double lambda = 1.0 / static_cast<double>(perms.perms.size());
  std::vector<double> sqrt_avg(n);
  for (std::size_t x = 0; x < n; ++x) sqrt_avg[x] = std::sqrt(avg[x]);
  EntconcTerms terms;
  CompensatedSum bound;
  for (const auto& sigma : perms.perms) {
    const auto moved = permute_mass(sigma, nu.mass());
    terms.permutation_entropy_defect = std::max(terms.permutation_entropy_defect, std::abs(entropy_of(moved) - h_nu));
    CompensatedSum dist2;
    for (std::size_t x = 0; x < n; ++x) {
      const double diff = std::sqrt(moved[x]) - sqrt_avg[x];
      dist2 += diff * diff;
    }
    bound += 0.5 * lambda * dist2.value();
  }
  terms.entropy_gain = entropy(avg) - h_nu;
  terms.lower_bound = bound.value();
  return terms;
}

CheckReport check_entconc(const Graph& graph, const PermDecomposition& perms, const DistSampler& sampler,
                          std::size_t trials, std::size_t threads) {
  const auto outcomes = parallel_map<TrialOutcome>(trials, threads, [&](std::size_t i) {
    const Dist nu = sampler.sample(graph.n(), i, &graph);
    const auto terms = entconc_terms(graph, perms, nu);
    // A permutation that changes the entropy is a failure in its own right.
    const double margin = terms.permutation_entropy_defect > CheckReport::kTolerance ? -terms.permutation_entropy_defect
                                                                                     : terms.margin();
    const double ratio = terms.lower_bound > 0.0 ? terms.entropy_gain / terms.lower_bound
                                                 : std::numeric_limits<double>::quiet_NaN();
    return TrialOutcome{margin, ratio, describe(graph.provenance().family, sampler, i)};
  });
  return reduce("entconc[" + graph.provenance().family + "]", outcomes);
}

double HellingerTvMargins::min() const noexcept { return std::min({a, b, c}); }

HellingerTvMargins hellinger_tv_margins(const Dist& nu) {
  const Dist pi = Dist::uniform(nu.size());
  const double hell2 = hellinger_sq(nu, pi);
  const double l1 = l1_distance(nu, pi);
  // ||nu^{1/2} + pi^{1/2}||_2^2 = 2 + 2 <nu^{1/2}, pi^{1/2}>.
  const double plus_norm = std::sqrt(2.0 + 2.0 * sqrt_overlap(nu, pi));
  HellingerTvMargins m;
  m.a = l1 - hell2;
  m.b = std::sqrt(hell2) * plus_norm - l1;
  m.c = std::numeric_limits<double>::infinity();
  for (double eps : {0.1, 0.5, 1.0}) {
    if (hell2 < 2.0 - eps) m.c = std::min(m.c, (2.0 - std::pow(eps, 4) / 128.0) - l1);
  }
  return m;
}

CheckReport check_hellinger_tv(std::span<const std::size_t> sizes, std::size_t trials, std::uint64_t seed,
                               std::size_t threads) {
  if (sizes.empty()) throw ValidationError("no sizes given");
  const std::vector<DistSampler> samplers{{SamplerMode::uniform_simplex, seed}, {SamplerMode::sparse_delta_mix, seed}};
  const auto outcomes = parallel_map<TrialOutcome>(trials, threads, [&](std::size_t i) {
    const std::size_t n = sizes[i % sizes.size()];
    const auto& sampler = samplers[(i / sizes.size()) % samplers.size()];
    const auto m = hellinger_tv_margins(sampler.sample(n, i));
    return TrialOutcome{m.min(), std::numeric_limits<double>::quiet_NaN(),
                        describe("n=" + std::to_string(n), sampler, i)};
  });
  return reduce("hellinger_tv", outcomes);
}

SqrtConditionalTerms sqrt_conditional_terms(const ConditionalSpace& space) {
  const std::size_t m = space.weights.size();
  if (space.block.size() != m || space.f.size() != m) throw ValidationError("conditional space arrays differ in length");
  std::size_t blocks = 0;
  for (std::size_t b : space.block) blocks = std::max(blocks, b + 1);
  std::vector<double> block_mass(blocks, 0.0), block_f(blocks, 0.0);
  double f_max = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (space.f[i] < 0.0) throw ValidationError("f must be nonnegative");
    block_mass[space.block[i]] += space.weights[i];
    block_f[space.block[i]] += space.weights[i] * space.f[i];
    f_max = std::max(f_max, space.f[i]);
  }
  CompensatedSum lhs, e_sqrt_g, e_sqrt_f;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = space.block[i];
    const double g = block_mass[b] > 0.0 ? block_f[b] / block_mass[b] : 0.0;
    const double diff = std::sqrt(g) - std::sqrt(space.f[i]);
    lhs += space.weights[i] * diff * diff;
    e_sqrt_g += space.weights[i] * std::sqrt(g);
    e_sqrt_f += space.weights[i] * std::sqrt(space.f[i]);
  }
  return {lhs.value(), 2.0 * std::sqrt(f_max) * (e_sqrt_g.value() - e_sqrt_f.value())};
}

CheckReport check_sqrt_conditional(std::size_t max_space_size, std::size_t max_partitions, std::size_t trials,
                                   std::uint64_t seed, std::size_t threads) {
  if (max_space_size == 0 || max_partitions == 0) throw ValidationError("space size and partition count must be positive");
  const auto outcomes = parallel_map<TrialOutcome>(trials, threads, [&](std::size_t i) {
    Rng rng(seed, i);
    const std::size_t m = 1 + rng.below(max_space_size);
    const std::size_t k = 1 + rng.below(std::min(max_partitions, m));
    ConditionalSpace space;
    space.weights.resize(m);
    space.block.resize(m);
    space.f.resize(m);
    for (double& w : space.weights) w = rng.exponential();
    const double total = compensated_sum(space.weights);
    for (double& w : space.weights) w /= total;
    const double scale = 10.0 * rng.uniform_open0();
    for (std::size_t j = 0; j < m; ++j) {
      space.block[j] = rng.below(k);
      space.f[j] = rng.uniform() < 0.2 ? 0.0 : scale * rng.uniform();
    }
    const auto terms = sqrt_conditional_terms(space);
    std::ostringstream os;
    os << "{\"seed\":" << seed << ",\"trial\":" << i << ",\"atoms\":" << m << ",\"blocks\":" << k << "}";
    return TrialOutcome{terms.margin(), std::numeric_limits<double>::quiet_NaN(), os.str()};
  });
  return reduce("sqrt_conditional", outcomes);
}

CheckReport check_f_bounds(const Graph& graph, Vertex start, std::size_t steps) {
  CheckReport report;
  report.name = "f_bounds[" + graph.provenance().family + "]";
  const double d = static_cast<double>(graph.d());
  WalkStream walk(graph, start);
  for (std::size_t t = 1; t <= steps; ++t) {
    walk.step();
    const auto fs = f_stats(graph, walk.previous(), walk.current());
    const double deficit_bound = std::pow((d - 1.0) / d, static_cast<double>(t - 1));
    const double margin = std::min({fs.min_f - 1.0 / d, 1.0 + 1e-12 - fs.e_f, deficit_bound + 1e-12 - (1.0 - fs.e_f)});
    report.record(margin, "{\"t\":" + std::to_string(t) + ",\"start\":" + std::to_string(start) + "}");
  }
  return report;
}

CheckReport check_transitive_concavity(const Graph& graph, Vertex start, std::size_t steps) {
  if (!graph.provenance().vertex_transitive) {
    throw ValidationError("entropy concavity is only claimed for vertex-transitive graphs; '" +
                          graph.provenance().family + "' is not declared transitive");
  }
  CheckReport report;
  report.name = "transitive_concavity[" + graph.provenance().family + "]";
  WalkStream walk(graph, start);
  double h_prev = entropy(walk.current());
  double inc_prev = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= steps; ++t) {
    walk.step();
    const double h = entropy(walk.current());
    const double inc = h - h_prev;
    const double margin = std::min(inc, inc_prev - inc);
    report.record(std::isinf(margin) ? inc : margin, "{\"t\":" + std::to_string(t) + "}");
    inc_prev = inc;
    h_prev = h;
  }
  return report;
}

RefereeScenario referee_scenario(const Graph& graph, double rho, double delta, Vertex start) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  const double log_n = std::log(static_cast<double>(graph.n()));
  const std::size_t cap = step_cap(graph, 0.01, MixOptions{rho, std::nullopt});
  RefereeScenario s;
  WalkStream walk(graph, start);
  while (entropy(walk.current()) <= (1.0 - delta) * log_n) {
    if (walk.t() >= cap) throw NumericalError("entropy never exceeded (1 - delta) log n within the step cap");
    walk.step();
  }
  s.entry_time = walk.t();
  s.extra_steps = static_cast<std::size_t>(std::ceil(std::sqrt(delta) * log_n / (-2.0 * std::log(rho))));
  for (std::size_t k = 0; k < s.extra_steps; ++k) walk.step();
  s.l1_after = l1_distance(walk.current(), Dist::uniform(graph.n()));
  s.bound = 4.0 * std::sqrt(delta);
  return s;
}

CheckReport check_referee_scenario(const Graph& graph, double rho, std::span<const double> deltas) {
  CheckReport report;
  report.name = "referee_scenario[" + graph.provenance().family + "]";
  for (double delta : deltas) {
    const auto s = referee_scenario(graph, rho, delta);
    std::ostringstream os;
    os << "{\"delta\":" << delta << ",\"entry_time\":" << s.entry_time << ",\"extra_steps\":" << s.extra_steps
       << ",\"l1_after\":" << s.l1_after << "}";
    report.record(s.bound - s.l1_after, os.str());
  }
  return report;
}

std::vector<CheckReport> run_verify_suite(const SuiteConfig& config) {
  struct Fixture {
    Graph graph;
    double rho;
    std::size_t f_steps;
  };
  std::vector<Fixture> fixtures;
  auto add = [&](Graph g, std::size_t f_steps) {
    const double rho = spectral_report(g).rho;
    fixtures.push_back({std::move(g), rho, f_steps});
  };
  add(complete_graph(4), 10);
  add(petersen_graph(), 20);
  add(random_regular({100, 3, config.seed, 1000}), 40);
  if (config.include_lps) {
    auto g = lps_graph({5, 29}).graph;
    const double rho = spectral_report(g).rho;
    const std::size_t t_mix = mixing_time_tv(g, 0, 0.1, MixOptions{rho, std::nullopt});
    fixtures.push_back({std::move(g), rho, 2 * t_mix});
  }

  std::vector<CheckReport> reports;
  const std::vector<SamplerMode> modes{SamplerMode::uniform_simplex, SamplerMode::sparse_delta_mix,
                                       SamplerMode::walk_snapshot};
  auto split = [&](std::size_t total, std::size_t part) {
    return total / modes.size() + (part < total % modes.size() ? 1 : 0);
  };
  for (const auto& fx : fixtures) {
    CheckReport production;
    CheckReport conc;
    const auto perms = decompose_permutations(fx.graph);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const DistSampler sampler{modes[m], config.seed + m};
      auto r = check_entropy_production(fx.graph, fx.rho, sampler, split(config.trials, m), config.threads);
      if (m == 0) production = r; else production.merge(r);
      auto c = check_entconc(fx.graph, perms, sampler, split(config.trials / 2, m), config.threads);
      if (m == 0) conc = c; else conc.merge(c);
    }
    reports.push_back(production);
    reports.push_back(conc);
    reports.push_back(check_f_bounds(fx.graph, 0, fx.f_steps));
    if (fx.graph.provenance().vertex_transitive) reports.push_back(check_transitive_concavity(fx.graph, 0, 30));
  }
  const std::vector<std::size_t> sizes{5, 50, 500};
  reports.push_back(check_hellinger_tv(sizes, 10 * config.trials, config.seed, config.threads));
  reports.push_back(check_sqrt_conditional(64, 16, 10 * config.trials, config.seed, config.threads));
  if (config.include_lps) {
    const auto& lps = fixtures.back();
    const std::vector<double> deltas{0.01, 0.04};
    reports.push_back(check_referee_scenario(lps.graph, lps.rho, deltas));
  }
  return reports;
}

}  // namespace rcut
