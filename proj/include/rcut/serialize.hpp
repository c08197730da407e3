#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "rcut/analysis.hpp"
#include "rcut/generators.hpp"
#include "rcut/spectral.hpp"
#include "rcut/tree.hpp"
#include "rcut/verify.hpp"
#include "rcut/walk.hpp"

namespace rcut {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// %.17g, with nan/inf spelled out.
std::string format_double(double v);

Json to_json(const ValidationReport& r);
Json to_json(const SpectralReport& r);
Json to_json(const TrendReport& r);
Json to_json(const CheckReport& r);
Json to_json(const MixBounds& b);
Json to_json(const MixingProfile& p);
Json to_json(const CutoffScan& s);
Json to_json(const CutoffRatios& r);
Json to_json(const FWindowReport& r);
Json to_json(const SmbResult& r);
Json to_json(std::span<const EntropyAtMixingRow> rows);
Json to_json(std::span<const TreeFStats> stats);
Json lps_sidecar(const LpsGraph& lps, const LpsParams& params);

// `t,tv,hell2,entropy,e_f,e_sqrt_f,support_size`
std::string profile_csv(const MixingProfile& p);
// `t,r,q_r`, only radii of the right parity.
std::string tree_dist_csv(std::span<const RadialDist> dists);
// `t,e_neg_log_f,e_sqrt_f,e_f,min_f`
std::string tree_stats_csv(std::span<const TreeFStats> stats);
// One line per (graph, start, alpha).
std::string scan_csv(const CutoffScan& s);

}  // namespace rcut
