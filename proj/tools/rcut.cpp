// rcut: command-line front end for graph generation, spectra, walk
// profiles, cutoff scans, tree statistics and the inequality suite.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rcut/analysis.hpp"
#include "rcut/error.hpp"
#include "rcut/generators.hpp"
#include "rcut/graph.hpp"
#include "rcut/plot.hpp"
#include "rcut/serialize.hpp"
#include "rcut/spectral.hpp"
#include "rcut/tree.hpp"
#include "rcut/verify.hpp"
#include "rcut/walk.hpp"

namespace {

using namespace rcut;

struct Globals {
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string format = "json";
  std::string out;
};

// A graph plus whatever its generator knows about it.
struct Source {
  Graph graph;
  std::optional<CyclicSymmetry> symmetry;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::size_t to_size(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw ValidationError("expected a nonnegative integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

// lps:<p>:<q>, random:<n>:<d>[:<seed>], or any named fixture.
Source generate(const std::string& spec, std::uint64_t default_seed) {
  const auto parts = split(spec, ':');
  if (!parts.empty() && parts[0] == "lps" && parts.size() == 3) {
    auto lps = lps_graph({static_cast<std::int64_t>(to_size(parts[1])), static_cast<std::int64_t>(to_size(parts[2]))});
    return {std::move(lps.graph), CyclicSymmetry{std::move(lps.left_unipotent)}};
  }
  if (!parts.empty() && parts[0] == "random" && (parts.size() == 3 || parts.size() == 4)) {
    RandomRegularParams p{to_size(parts[1]), to_size(parts[2]), default_seed, 1000};
    if (parts.size() == 4) p.seed = to_size(parts[3]);
    return {random_regular(p), std::nullopt};
  }
  return {named_fixture(spec), std::nullopt};
}

Source resolve(const std::string& file, const std::string& spec, std::uint64_t seed) {
  if (!file.empty() && !spec.empty()) throw ValidationError("give either --graph or --gen, not both");
  if (!file.empty()) return {load_graph(file), std::nullopt};
  if (!spec.empty()) return generate(spec, seed);
  throw ValidationError("a graph is required: --graph <file> or --gen <spec>");
}

// Effective configuration of the parsed command line, without --threads
// (results do not depend on it) and without help flags.
Json effective_config(const CLI::App& app) {
  Json cfg = Json::object();
  auto collect = [&](const CLI::App& a, Json& into) {
    for (const CLI::Option* opt : a.get_options()) {
      const std::string name = opt->get_name(false, true);
      if (name.empty() || name == "--help" || name == "--threads") continue;
      const std::string key = opt->get_single_name();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        if (opt->get_type_size() == 0) {
          into[key] = true;
        } else if (res.size() == 1) {
          into[key] = res.front();
        } else {
          into[key] = res;
        }
      } else if (!opt->get_default_str().empty()) {
        into[key] = opt->get_default_str();
      }
    }
  };
  collect(app, cfg);
  const CLI::App* cur = &app;
  std::string command;
  while (true) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
    command += (command.empty() ? "" : " ") + cur->get_name();
    collect(*cur, cfg);
  }
  cfg["command"] = command;
  return cfg;
}

class Output {
 public:
  Output(const Globals& g, Json config) : globals_(g), config_(std::move(config)) {}

  bool csv() const { return globals_.format == "csv"; }

  void json(Json result) const {
    Json doc{{"schema", kSchemaVersion}, {"tool", "rcut"}, {"version", RCUT_VERSION}, {"config", config_},
             {"result", std::move(result)}};
    write(doc.dump(2) + "\n");
  }

  void text(const std::string& body) const {
    write("# rcut " RCUT_VERSION " " + config_.dump() + "\n" + body);
  }

  void write(const std::string& s) const {
    if (globals_.out.empty()) {
      std::cout << s;
      std::cout.flush();
      return;
    }
    write_file(globals_.out, s);
  }

  static void write_file(const std::string& path, const std::string& s) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file " + path);
    f << s;
    if (!f) throw IoError("failed writing " + path);
  }

  const Json& config() const { return config_; }

 private:
  const Globals& globals_;
  Json config_;
};

void add_graph_options(CLI::App* cmd, std::string& file, std::string& spec) {
  cmd->add_option("--graph", file, "Graph file in edge-list format");
  cmd->add_option("--gen", spec, "Generator spec: lps:<p>:<q>, random:<n>:<d>[:<seed>], complete:<k>, petersen, "
                                 "circulant:<n>:<o1,o2,...>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-walk cutoff laboratory for regular graphs"};
  app.set_version_flag("--version", std::string(RCUT_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "Output path (stdout when omitted)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph file");
  gen->require_subcommand(1);
  LpsParams lps_params;
  std::string sidecar;
  auto* gen_lps = gen->add_subcommand("lps", "LPS Ramanujan graph (p|q) = +1");
  gen_lps->add_option("--p", lps_params.p, "Prime p = 1 mod 4 (degree p+1)")->capture_default_str();
  gen_lps->add_option("--q", lps_params.q, "Prime q = 1 mod 4")->capture_default_str();
  gen_lps->add_option("--sidecar", sidecar, "JSON sidecar path (default <out>.json)");
  RandomRegularParams rr{100, 3, 1, 1000};
  auto* gen_random = gen->add_subcommand("random", "Random regular graph (pairing model)");
  gen_random->add_option("--n", rr.n, "Vertex count")->capture_default_str();
  gen_random->add_option("--d", rr.d, "Degree")->capture_default_str();
  gen_random->add_option("--attempts", rr.max_attempts, "Retry budget")->capture_default_str();
  std::string fixture_name;
  auto* gen_fixture = gen->add_subcommand("fixture", "Named fixture");
  gen_fixture->add_option("--name", fixture_name, "complete:<k>, petersen, circulant:<n>:<offsets>")->required();

  std::string file, spec;

  auto* validate_cmd = app.add_subcommand("validate", "Check admissibility of a graph");
  add_graph_options(validate_cmd, file, spec);

  SpectralOptions sopt;
  std::string method = "auto";
  auto* spectrum = app.add_subcommand("spectrum", "Reduced spectral radius and Ramanujan certificate");
  add_graph_options(spectrum, file, spec);
  spectrum->add_option("--method", method, "auto, dense or iterative")->capture_default_str();
  spectrum->add_option("--tol", sopt.tol, "Convergence tolerance")->capture_default_str();
  spectrum->add_option("--slack", sopt.ramanujan_slack, "Ramanujan slack")->capture_default_str();

  Vertex start = 0;
  std::size_t steps = 20;
  auto* evolve_cmd = app.add_subcommand("evolve", "Exact walk profile (TV, Hellinger, entropy, f statistics)");
  add_graph_options(evolve_cmd, file, spec);
  evolve_cmd->add_option("--start", start, "Start vertex")->capture_default_str();
  evolve_cmd->add_option("--T", steps, "Number of steps")->capture_default_str();

  double alpha = 0.25;
  auto* mix = app.add_subcommand("mix", "Mixing times and bounds");
  add_graph_options(mix, file, spec);
  mix->add_option("--start", start, "Start vertex")->capture_default_str();
  mix->add_option("--alpha", alpha, "Threshold in (0, 1)")->capture_default_str();

  std::vector<std::string> scan_specs, scan_files;
  ScanOptions scan_opt;
  std::string plot_dir;
  auto* scan = app.add_subcommand("scan", "Cutoff scan over a family of same-degree graphs");
  scan->add_option("--gen", scan_specs, "Generator specs, one per member");
  scan->add_option("--graph", scan_files, "Graph files, one per member");
  scan->add_option("--alphas", scan_opt.alphas, "TV threshold grid")->capture_default_str()->delimiter(',');
  scan->add_option("--eps", scan_opt.eps, "Entropy-at-mixing grid")->capture_default_str()->delimiter(',');
  scan->add_option("--starts", scan_opt.starts_per_graph, "Starts for non-transitive graphs")->capture_default_str();
  scan->add_option("--plot-dir", plot_dir, "Also write gnuplot data and SVG plots here");

  std::size_t tree_d = 3, tree_t = 100;
  bool tree_stats = false;
  auto* tree = app.add_subcommand("tree", "Radial walk on the d-regular tree");
  tree->add_option("--d", tree_d, "Degree")->capture_default_str();
  tree->add_option("--T", tree_t, "Number of steps")->capture_default_str();
  tree->add_flag("--stats", tree_stats, "Emit f statistics instead of radial laws");

  SuiteConfig suite;
  std::string which = "all";
  bool no_lps = false;
  auto* verify = app.add_subcommand("verify", "Run the inequality suite");
  verify->add_option("--suite", which, "all")->capture_default_str()->check(CLI::IsMember({"all"}));
  verify->add_option("--trials", suite.trials, "Samples per graph")->capture_default_str();
  verify->add_flag("--no-lps", no_lps, "Skip the LPS(5,29) fixture");

  double eps = 0.15, delta = 0.1, kappa = 0.1;
  auto* report = app.add_subcommand("report", "Spectrum, mixing, entropy criterion, f window and SMB mass for one graph");
  add_graph_options(report, file, spec);
  report->add_option("--start", start, "Start vertex")->capture_default_str();
  report->add_option("--eps", eps, "Window parameter")->capture_default_str();
  report->add_option("--delta", delta, "SMB delta")->capture_default_str();
  report->add_option("--kappa", kappa, "SMB kappa")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::validation);
  }

  try {
    const Output out(g, effective_config(app));

    if (gen->parsed()) {
      Graph graph = [&] {
        if (gen_lps->parsed()) {
          auto lps = lps_graph(lps_params);
          const std::string path = !sidecar.empty() ? sidecar : (g.out.empty() ? "" : g.out + ".json");
          if (!path.empty()) Output::write_file(path, lps_sidecar(lps, lps_params).dump(2) + "\n");
          return std::move(lps.graph);
        }
        if (gen_random->parsed()) {
          rr.seed = g.seed;
          return random_regular(rr);
        }
        return named_fixture(fixture_name);
      }();
      out.text(format_graph(graph));
      return 0;
    }

    if (validate_cmd->parsed()) {
      const auto src = resolve(file, spec, g.seed);
      out.json(to_json(validate(src.graph)));
      return 0;
    }

    if (spectrum->parsed()) {
      const auto src = resolve(file, spec, g.seed);
      sopt.method = parse_eigen_method(method);
      sopt.seed = g.seed;
      const auto rep = spectral_report(src.graph, sopt, src.symmetry ? &*src.symmetry : nullptr);
      out.json(to_json(rep));
      return 0;
    }

    if (evolve_cmd->parsed()) {
      const auto src = resolve(file, spec, g.seed);
      const auto prof = mixing_profile(src.graph, start, steps);
      if (out.csv()) {
        out.text(profile_csv(prof));
      } else {
        out.json(to_json(prof));
      }
      return 0;
    }

    if (mix->parsed()) {
      const auto src = resolve(file, spec, g.seed);
      const auto rep = spectral_report(src.graph, {}, src.symmetry ? &*src.symmetry : nullptr);
      const MixOptions mo{rep.rho, std::nullopt};
      const std::size_t t_tv = mixing_time_tv(src.graph, start, alpha, mo);
      const std::size_t t_hell = mixing_time_hellinger(src.graph, start, alpha, mo);
      const auto bounds = mix_bounds(src.graph, rep.rho, alpha);
      if (out.csv()) {
        out.text("n,d,rho,alpha,t_mix,t_mix2,entropic_lb,spectral_ub\n" + std::to_string(src.graph.n()) + "," +
                 std::to_string(src.graph.d()) + "," + format_double(rep.rho) + "," + format_double(alpha) + "," +
                 std::to_string(t_tv) + "," + std::to_string(t_hell) + "," + format_double(bounds.entropic_lb) + "," +
                 format_double(bounds.spectral_ub) + "\n");
      } else {
        out.json(Json{{"n", src.graph.n()},
                      {"d", src.graph.d()},
                      {"start", start},
                      {"alpha", alpha},
                      {"t_mix", t_tv},
                      {"t_mix2", t_hell},
                      {"bounds", to_json(bounds)}});
      }
      return 0;
    }

    if (scan->parsed()) {
      std::vector<Graph> family;
      for (const auto& f : scan_files) family.push_back(load_graph(f));
      for (const auto& s : scan_specs) family.push_back(generate(s, g.seed).graph);
      scan_opt.threads = g.threads;
      const auto result = cutoff_scan(family, scan_opt);
      if (!plot_dir.empty()) {
        std::filesystem::create_directories(plot_dir);
        std::vector<Series> norm;
        for (std::size_t i = 0; i < result.alphas.size(); ++i) {
          Series s{"alpha=" + format_double(result.alphas[i]), {}, {}};
          for (const auto& row : result.rows) {
            s.x.push_back(std::log(static_cast<double>(row.n)));
            s.y.push_back(row.normalized_time[i]);
          }
          norm.push_back(std::move(s));
        }
        Output::write_file(plot_dir + "/normalized_time.dat", gnuplot_data(norm));
        Output::write_file(plot_dir + "/normalized_time.svg",
                           svg_line_plot(norm, {"T_mix(alpha) h_d / log n", "log n", "normalized time"}));
        std::vector<Series> tv;
        for (const auto& row : result.rows) {
          Series s{row.label + " start " + std::to_string(row.start), {}, {}};
          const std::size_t horizon = *std::max_element(row.t_mix.begin(), row.t_mix.end()) + 2;
          for (const auto& pr : mixing_profile(family[row.graph_index], row.start, horizon).rows) {
            s.x.push_back(static_cast<double>(pr.t));
            s.y.push_back(pr.tv);
          }
          tv.push_back(std::move(s));
        }
        Output::write_file(plot_dir + "/tv_profiles.dat", gnuplot_data(tv));
        Output::write_file(plot_dir + "/tv_profiles.svg", svg_line_plot(tv, {"TV distance to uniform", "t", "tv"}));
      }
      if (out.csv()) {
        out.text(scan_csv(result));
      } else {
        Json j = to_json(result);
        j["cutoff_ratio"] = to_json(cutoff_ratio(result, result.alphas.front(), result.alphas.back()));
        out.json(std::move(j));
      }
      return 0;
    }

    if (tree->parsed()) {
      if (tree_stats) {
        const auto stats = tree_f_stats_series(tree_d, tree_t);
        if (out.csv()) {
          out.text(tree_stats_csv(stats));
        } else {
          out.json(to_json(std::span<const TreeFStats>(stats)));
        }
      } else {
        const auto dists = tree_evolve(tree_d, tree_t);
        out.text(tree_dist_csv(dists));
      }
      return 0;
    }

    if (verify->parsed()) {
      suite.seed = g.seed;
      suite.threads = g.threads;
      suite.include_lps = !no_lps;
      const auto reports = run_verify_suite(suite);
      Json arr = Json::array();
      bool ok = true;
      for (const auto& r : reports) {
        arr.push_back(to_json(r));
        ok = ok && r.pass;
      }
      out.json(Json{{"pass", ok}, {"checks", arr}});
      if (!ok) {
        std::cerr << "rcut: one or more checks failed\n";
        return static_cast<int>(ErrorKind::check_failure);
      }
      return 0;
    }

    if (report->parsed()) {
      const auto src = resolve(file, spec, g.seed);
      const auto rep = spectral_report(src.graph, {}, src.symmetry ? &*src.symmetry : nullptr);
      const std::vector<double> eps_grid{0.1, 0.25};
      const auto entropy_rows = entropy_at_mixing(src.graph, start, eps_grid, rep.rho);
      const std::size_t t_half = mixing_time_tv(src.graph, start, 0.5, MixOptions{rep.rho, std::nullopt});
      Json j{{"spectrum", to_json(rep)},
             {"bounds", to_json(mix_bounds(src.graph, rep.rho, 0.25))},
             {"t_mix", {{"0.1", mixing_time_tv(src.graph, start, 0.1, MixOptions{rep.rho, std::nullopt})},
                        {"0.25", mixing_time_tv(src.graph, start, 0.25, MixOptions{rep.rho, std::nullopt})},
                        {"0.5", t_half},
                        {"0.9", mixing_time_tv(src.graph, start, 0.9, MixOptions{rep.rho, std::nullopt})}}},
             {"entropy_at_mixing", to_json(std::span<const EntropyAtMixingRow>(entropy_rows))},
             {"smb", to_json(smb_concentration(src.graph, start, t_half, delta, kappa))}};
      if (rep.is_ramanujan) {
        j["f_window"] = to_json(f_window_report(src.graph, rep, eps, start));
      } else {
        j["f_window"] = "skipped: graph is not certified Ramanujan";
      }
      out.json(std::move(j));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "rcut: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "rcut: internal error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::numerical);
  }
  return 0;
}
