#include "rcut/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rcut {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const ValidationReport& r) {
  return Json{{"schema", kSchemaVersion},   {"simple", r.simple},
              {"d_regular", r.d_regular},   {"degree_at_least_3", r.degree_at_least_3},
              {"connected", r.connected},   {"non_bipartite", r.non_bipartite},
              {"admissible", r.admissible()}};
}

Json to_json(const SpectralReport& r) {
  Json j{{"schema", kSchemaVersion}, {"n", r.n},
         {"d", r.d},                 {"rho", r.rho},
         {"lambda2", r.lambda2},     {"lambda_min", r.lambda_min},
         {"rho_d", r.rho_d},         {"is_ramanujan", r.is_ramanujan},
         {"method", to_string(r.method)}, {"tol", r.tol},
         {"slack", r.slack}};
  if (r.method == EigenMethod::iterative) {
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
  } else {
    j["blocks"] = r.blocks;
  }
  return j;
}

Json to_json(const TrendReport& r) {
  Json members = Json::array();
  for (const auto& m : r.members) members.push_back({{"n", m.n}, {"rho", m.rho}, {"excess", m.excess}});
  return Json{{"schema", kSchemaVersion}, {"d", r.d}, {"rho_d", r.rho_d}, {"slack", r.slack},
              {"slack_note", "finite-size tolerance chosen for this run"},
              {"max_excess", r.max_excess}, {"all_within", r.all_within}, {"members", members}};
}

Json to_json(const CheckReport& r) {
  Json j{{"schema", kSchemaVersion}, {"name", r.name},     {"trials", r.trials},
         {"min_margin", r.min_margin}, {"pass", r.pass}, {"tolerance", CheckReport::kTolerance}};
  j["min_ratio"] = std::isnan(r.min_ratio) ? Json(nullptr) : Json(r.min_ratio);
  j["worst_case"] = r.worst_case.empty() ? Json(nullptr) : Json::parse(r.worst_case, nullptr, false);
  if (j["worst_case"].is_discarded()) j["worst_case"] = r.worst_case;
  return j;
}

Json to_json(const MixBounds& b) {
  return Json{{"h_d", b.h_d},
              {"alpha", b.alpha},
              {"rho", b.rho},
              {"entropic_lb", b.entropic_lb},
              {"entropic_lb_note", "leading term log n / h_d; the o(log n) correction is taken as 0"},
              {"spectral_ub", b.spectral_ub},
              {"spectral_ub_note", "from ||mu^t - pi||_1 <= sqrt(n) rho^t, constant 2 log(1/(2 alpha))"}};
}

Json to_json(const MixingProfile& p) {
  Json rows = Json::array();
  for (const auto& r : p.rows) {
    Json row{{"t", r.t}, {"tv", r.tv}, {"hell2", r.hell2}, {"entropy", r.entropy}};
    auto put = [&](const char* key, double v) { row[key] = std::isnan(v) ? Json(nullptr) : Json(v); };
    put("e_f", r.e_f);
    put("e_sqrt_f", r.e_sqrt_f);
    put("min_f", r.min_f);
    put("e_neg_log_f", r.e_neg_log_f);
    row["support_size"] = r.support_size;
    rows.push_back(std::move(row));
  }
  return Json{{"schema", kSchemaVersion}, {"start", p.start}, {"n", p.n}, {"d", p.d}, {"rows", rows}};
}

Json to_json(const CutoffScan& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"label", r.label},
                    {"n", r.n},
                    {"d", r.d},
                    {"rho", r.rho},
                    {"start", r.start},
                    {"t_mix", r.t_mix},
                    {"t_mix2", r.t_mix2},
                    {"normalized_time", r.normalized_time},
                    {"spectral_ub", r.spectral_ub},
                    {"entropic_lb", r.entropic_lb},
                    {"t_mix_eps", r.t_mix_eps},
                    {"h_at_mix", r.h_at_mix}});
  }
  return Json{{"schema", kSchemaVersion}, {"alphas", s.alphas}, {"eps", s.eps}, {"d", s.d},
              {"h_d", s.h_d}, {"start_notes", s.start_notes}, {"rows", rows}};
}

Json to_json(const CutoffRatios& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j{{"label", e.label}, {"n", e.n}, {"start", e.start}};
    j["ratio"] = e.ratio ? Json(*e.ratio) : Json(nullptr);
    if (!e.note.empty()) j["note"] = e.note;
    entries.push_back(std::move(j));
  }
  return Json{{"schema", kSchemaVersion}, {"alpha", r.alpha}, {"alpha_prime", r.alpha_prime}, {"entries", entries}};
}

Json to_json(const FWindowReport& r) {
  Json rows = Json::array();
  for (const auto& w : r.rows) {
    rows.push_back({{"t", w.t},
                    {"e_sqrt_f", w.e_sqrt_f},
                    {"tree_e_sqrt_f", w.tree_e_sqrt_f},
                    {"chain_bound", w.chain_bound},
                    {"slack", w.slack},
                    {"upper_ok", w.upper_ok},
                    {"lower_ok", w.lower_ok},
                    {"in_window", w.in_window}});
  }
  Json j{{"schema", kSchemaVersion}, {"eps", r.eps}, {"rho", r.rho}, {"rho_d", r.rho_d}};
  j["t_eps"] = r.t_eps ? Json(*r.t_eps) : Json(nullptr);
  j["t_mix2"] = r.t_mix2;
  j["empty"] = r.empty;
  j["all_pass"] = r.all_pass();
  j["rows"] = rows;
  return j;
}

Json to_json(const SmbResult& r) {
  return Json{{"schema", kSchemaVersion}, {"t", r.t},         {"delta", r.delta},
              {"kappa", r.kappa},         {"radius", r.radius}, {"level_threshold", r.level_threshold},
              {"mass", r.mass},           {"pass", r.pass}};
}

Json to_json(std::span<const EntropyAtMixingRow> rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"eps", r.eps},
                   {"t_mix", r.t_mix},
                   {"h_ratio", r.h_ratio},
                   {"t_half", r.t_half},
                   {"h_at_half", r.h_at_half},
                   {"half_bound", r.half_bound},
                   {"half_bound_holds", r.half_bound_holds}});
  }
  return Json{{"schema", kSchemaVersion}, {"rows", out}};
}

Json to_json(std::span<const TreeFStats> stats) {
  Json rows = Json::array();
  for (const auto& s : stats) {
    rows.push_back({{"t", s.t}, {"e_neg_log_f", s.e_neg_log_f}, {"e_sqrt_f", s.e_sqrt_f}, {"e_f", s.e_f},
                    {"min_f", s.min_f}});
  }
  return Json{{"schema", kSchemaVersion}, {"rows", rows}};
}

Json lps_sidecar(const LpsGraph& lps, const LpsParams& params) {
  return Json{{"schema", kSchemaVersion}, {"p", params.p}, {"q", params.q}, {"iota", lps.iota},
              {"group_order", lps.group_order()}, {"degree", lps.graph.d()}};
}

std::string profile_csv(const MixingProfile& p) {
  std::ostringstream os;
  os << "t,tv,hell2,entropy,e_f,e_sqrt_f,support_size\n";
  for (const auto& r : p.rows) {
    os << r.t << ',' << format_double(r.tv) << ',' << format_double(r.hell2) << ',' << format_double(r.entropy) << ','
       << format_double(r.e_f) << ',' << format_double(r.e_sqrt_f) << ',' << r.support_size << '\n';
  }
  return os.str();
}

std::string tree_dist_csv(std::span<const RadialDist> dists) {
  std::ostringstream os;
  os << "t,r,q_r\n";
  for (const auto& q : dists) {
    for (std::size_t r = q.t % 2; r <= q.max_radius(); r += 2) os << q.t << ',' << r << ',' << format_double(q.q(r)) << '\n';
  }
  return os.str();
}

std::string tree_stats_csv(std::span<const TreeFStats> stats) {
  std::ostringstream os;
  os << "t,e_neg_log_f,e_sqrt_f,e_f,min_f\n";
  for (const auto& s : stats) {
    os << s.t << ',' << format_double(s.e_neg_log_f) << ',' << format_double(s.e_sqrt_f) << ',' << format_double(s.e_f)
       << ',' << format_double(s.min_f) << '\n';
  }
  return os.str();
}

std::string scan_csv(const CutoffScan& s) {
  std::ostringstream os;
  os << "label,n,d,rho,start,alpha,t_mix,t_mix2,normalized_time,entropic_lb,spectral_ub\n";
  for (const auto& r : s.rows) {
    for (std::size_t i = 0; i < s.alphas.size(); ++i) {
      os << '"' << r.label << "\"," << r.n << ',' << r.d << ',' << format_double(r.rho) << ',' << r.start << ','
         << format_double(s.alphas[i]) << ',' << r.t_mix[i] << ',' << r.t_mix2[i] << ','
         << format_double(r.normalized_time[i]) << ',' << format_double(r.entropic_lb) << ','
         << format_double(r.spectral_ub[i]) << '\n';
    }
  }
  return os.str();
}

}  // namespace rcut
