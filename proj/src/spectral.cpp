#include "rcut/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "rcut/error.hpp"
#include "rcut/rng.hpp"

namespace rcut {

std::string to_string(EigenMethod m) {
  switch (m) {
    case EigenMethod::automatic:
      return "auto";
    case EigenMethod::dense:
      return "dense";
    case EigenMethod::iterative:
      return "iterative";
  }
  return "auto";
}

EigenMethod parse_eigen_method(const std::string& s) {
  if (s == "auto") return EigenMethod::automatic;
  if (s == "dense") return EigenMethod::dense;
  if (s == "iterative") return EigenMethod::iterative;
  throw ValidationError("unknown eigen method '" + s + "' (expected auto, dense, iterative)");
}

double alon_boppana(std::size_t d) {
  return 2.0 * std::sqrt(static_cast<double>(d - 1)) / static_cast<double>(d);
}

namespace {

struct OrbitIndex {
  std::size_t order = 1;
  std::vector<Vertex> representatives;
  std::vector<std::size_t> orbit;     // vertex -> orbit id
  std::vector<std::size_t> position;  // vertex -> l with v = tau^l(rep)
};

OrbitIndex index_orbits(const Graph& graph, const CyclicSymmetry& symmetry) {
  const std::size_t n = graph.n();
  const auto& tau = symmetry.tau;
  if (tau.size() != n) throw ValidationError("symmetry has wrong length");
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  OrbitIndex idx;
  idx.orbit.assign(n, kUnset);
  idx.position.assign(n, 0);
  idx.order = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (idx.orbit[v] != kUnset) continue;
    const std::size_t id = idx.representatives.size();
    idx.representatives.push_back(v);
    std::size_t l = 0;
    Vertex x = v;
    do {
      if (x >= n || idx.orbit[x] != kUnset) throw ValidationError("symmetry is not a permutation");
      idx.orbit[x] = id;
      idx.position[x] = l++;
      x = tau[x];
    } while (x != v);
    if (idx.order == 0) idx.order = l;
    if (l != idx.order) throw ValidationError("symmetry orbits have unequal sizes");
  }
  // tau must map neighborhoods onto neighborhoods.
  std::vector<Vertex> image(graph.d());
  for (Vertex v = 0; v < n; ++v) {
    const auto row = graph.neighbors(v);
    for (std::size_t i = 0; i < row.size(); ++i) image[i] = tau[row[i]];
    std::sort(image.begin(), image.end());
    const auto target = graph.neighbors(tau[v]);
    if (!std::equal(image.begin(), image.end(), target.begin())) {
      throw ValidationError("symmetry is not a graph automorphism");
    }
  }
  return idx;
}

std::vector<double> real_block_spectrum(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> complex_block_spectrum(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Spectra of the symmetry blocks; block 0 holds the tau-invariant functions
// and therefore the constant vector.
std::vector<std::vector<double>> block_spectra(const Graph& graph, const CyclicSymmetry* symmetry) {
  const std::size_t n = graph.n();
  const double inv_d = 1.0 / static_cast<double>(graph.d());
  if (symmetry == nullptr) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y : graph.neighbors(x)) p(x, y) += inv_d;
    }
    return {real_block_spectrum(p)};
  }
  const auto idx = index_orbits(graph, *symmetry);
  const std::size_t m = idx.order;
  const auto r = static_cast<Eigen::Index>(idx.representatives.size());
  // P is real, so block m - k is the complex conjugate of block k and has
  // the same spectrum; only k <= m/2 is solved.
  std::vector<std::vector<double>> out(m);
  for (std::size_t k = 0; 2 * k <= m; ++k) {
    // Basis f_j = sum_l c^l delta_{tau^l(rep_j)} with c = exp(2 pi i k / m);
    // P f_j = sum_{y ~ rep_j} c^{-pos(y)} f_{orbit(y)} / d.
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(r, r);
    for (Eigen::Index j = 0; j < r; ++j) {
      for (Vertex y : graph.neighbors(idx.representatives[static_cast<std::size_t>(j)])) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * idx.position[y]) % m) /
                             static_cast<double>(m);
        block(static_cast<Eigen::Index>(idx.orbit[y]), j) += std::polar(inv_d, angle);
      }
    }
    out[k] = k == 0 ? real_block_spectrum(block.real()) : complex_block_spectrum(block);
    if (k != 0 && 2 * k != m) out[m - k] = out[k];
  }
  return out;
}

}  // namespace

std::vector<double> dense_spectrum(const Graph& graph, const CyclicSymmetry* symmetry) {
  std::vector<double> all;
  for (auto& block : block_spectra(graph, symmetry)) all.insert(all.end(), block.begin(), block.end());
  std::sort(all.begin(), all.end(), std::greater<>());
  return all;
}

namespace {

// Eigenvalues of the symmetric tridiagonal matrix (alpha, beta) below x.
std::size_t sturm_count(std::span<const double> alpha, std::span<const double> beta, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const double b2 = k == 0 ? 0.0 : beta[k - 1] * beta[k - 1];
    q = alpha[k] - x - (k == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

double tridiagonal_extreme(std::span<const double> alpha, std::span<const double> beta, bool largest) {
  const std::size_t m = alpha.size();
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (std::size_t k = 0; k < m; ++k) {
    const double radius = (k > 0 ? std::abs(beta[k - 1]) : 0.0) + (k + 1 < m ? std::abs(beta[k]) : 0.0);
    lo = std::min(lo, alpha[k] - radius);
    hi = std::max(hi, alpha[k] + radius);
  }
  for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const std::size_t below = sturm_count(alpha, beta, mid);
    if (largest) {
      (below == m ? hi : lo) = mid;
    } else {
      (below == 0 ? lo : hi) = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Last component of the unit eigenvector of T for eigenvalue theta, by
// inverse iteration with a pivoted tridiagonal solve.
double last_eigvec_component(std::span<const double> alpha, std::span<const double> beta, double theta) {
  const std::size_t m = alpha.size();
  if (m == 1) return 1.0;
  const double shift = theta + 1e-13 * std::max(1.0, std::abs(theta));
  // Banded LU with partial pivoting (upper bandwidth grows to 2).
  std::vector<double> dl(m - 1), dd(m), du(m - 1), du2(m > 2 ? m - 2 : 0);
  std::vector<char> swapped(m - 1, 0);
  for (std::size_t k = 0; k < m; ++k) dd[k] = alpha[k] - shift;
  for (std::size_t k = 0; k + 1 < m; ++k) dl[k] = du[k] = beta[k];
  const double tiny = std::numeric_limits<double>::epsilon() * 1e-3;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (std::abs(dd[k]) >= std::abs(dl[k])) {
      if (dd[k] == 0.0) dd[k] = tiny;
      const double f = dl[k] / dd[k];
      dl[k] = f;
      dd[k + 1] -= f * du[k];
      if (k + 2 < m) du2[k] = 0.0;
    } else {
      const double f = dd[k] / dl[k];
      dd[k] = dl[k];
      dl[k] = f;
      const double tmp = du[k];
      du[k] = dd[k + 1];
      dd[k + 1] = tmp - f * dd[k + 1];
      if (k + 2 < m) {
        du2[k] = du[k + 1];
        du[k + 1] = -f * du[k + 1];
      }
      swapped[k] = 1;
    }
  }
  if (dd[m - 1] == 0.0) dd[m - 1] = tiny;

  std::vector<double> x(m, 1.0);
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (std::size_t k = 0; k + 1 < m; ++k) {
      if (swapped[k]) {
        const double tmp = x[k];
        x[k] = x[k + 1];
        x[k + 1] = tmp - dl[k] * x[k];
      } else {
        x[k + 1] -= dl[k] * x[k];
      }
    }
    x[m - 1] /= dd[m - 1];
    x[m - 2] = (x[m - 2] - du[m - 2] * x[m - 1]) / dd[m - 2];
    for (std::size_t k = m - 2; k-- > 0;) {
      x[k] = (x[k] - du[k] * x[k + 1] - du2[k] * x[k + 2]) / dd[k];
    }
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  return x[m - 1];
}

void remove_mean(std::span<double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double mean = s / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LanczosResult lanczos_extremes(const Graph& graph, double tol, std::size_t max_iterations, std::uint64_t seed) {
  const std::size_t n = graph.n();
  if (n < 2) throw ValidationError("need at least two vertices");
  std::vector<double> v_prev(n, 0.0), v(n), w(n);
  Rng rng(seed);
  for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
  remove_mean(v);
  {
    const double norm = std::sqrt(dot(v, v));
    for (double& x : v) x /= norm;
  }

  std::vector<double> alpha;
  std::vector<double> beta;
  double beta_prev = 0.0;
  LanczosResult result;
  double last_residual = std::numeric_limits<double>::infinity();
  const std::size_t max_dim = std::min(max_iterations, n - 1);

  for (std::size_t j = 0; j < max_dim; ++j) {
    apply_normalized_adjacency(graph, v, w);
    // Rounding reintroduces the constant direction; keep it out.
    remove_mean(w);
    const double a = dot(w, v);
    for (std::size_t i = 0; i < n; ++i) w[i] -= a * v[i] + beta_prev * v_prev[i];
    // One pass of local reorthogonalization against the last two vectors.
    const double c1 = dot(w, v);
    const double c0 = dot(w, v_prev);
    for (std::size_t i = 0; i < n; ++i) w[i] -= c1 * v[i] + c0 * v_prev[i];
    const double a_corr = a + c1;
    alpha.push_back(a_corr);
    const double b = std::sqrt(dot(w, w));

    const std::size_t m = alpha.size();
    const bool breakdown = b <= 1e-12;
    const std::size_t interval = std::max<std::size_t>(10, m / 50);
    if (breakdown || m % interval == 0 || m == max_dim) {
      const double top = tridiagonal_extreme(alpha, beta, true);
      const double bottom = tridiagonal_extreme(alpha, beta, false);
      const double r_top = breakdown ? 0.0 : b * std::abs(last_eigvec_component(alpha, beta, top));
      const double r_bottom = breakdown ? 0.0 : b * std::abs(last_eigvec_component(alpha, beta, bottom));
      last_residual = std::max(r_top, r_bottom);
      result = {top, bottom, last_residual, m};
      if (last_residual <= tol) return result;
    }
    if (breakdown) break;
    beta.push_back(b);
    beta_prev = b;
    for (std::size_t i = 0; i < n; ++i) {
      v_prev[i] = v[i];
      v[i] = w[i] / b;
    }
  }
  if (alpha.size() == n - 1) return result;  // Krylov space exhausted the complement
  throw NumericalError("Lanczos did not converge in " + std::to_string(max_dim) + " iterations (residual " +
                           std::to_string(last_residual) + ")",
                       last_residual);
}

SpectralReport spectral_report(const Graph& graph, const SpectralOptions& options, const CyclicSymmetry* symmetry) {
  if (!(options.tol > 0.0)) throw ValidationError("tol must be positive");
  require_admissible(graph);
  const std::size_t n = graph.n();

  SpectralReport report;
  report.n = n;
  report.d = graph.d();
  report.rho_d = alon_boppana(graph.d());
  report.tol = options.tol;
  report.slack = options.ramanujan_slack;

  std::size_t block_size = n;
  if (symmetry != nullptr) {
    block_size = n / std::max<std::size_t>(1, index_orbits(graph, *symmetry).order);
  }
  EigenMethod method = options.method;
  if (method == EigenMethod::automatic) {
    method = block_size <= options.dense_threshold ? EigenMethod::dense : EigenMethod::iterative;
  }
  if (method == EigenMethod::dense && block_size > options.dense_threshold) {
    throw ValidationError("dense eigensolve requested for blocks of size " + std::to_string(block_size) +
                          " above the threshold " + std::to_string(options.dense_threshold));
  }
  report.method = method;

  if (method == EigenMethod::dense) {
    auto blocks = block_spectra(graph, symmetry);
    report.blocks = blocks.size();
    // The constant vector sits in block 0 as its top eigenvalue.
    auto& invariant = blocks.front();
    std::sort(invariant.begin(), invariant.end());
    const double top = invariant.back();
    if (std::abs(top - 1.0) > 1e-9) throw NumericalError("top eigenvalue of P is not 1", std::abs(top - 1.0));
    invariant.pop_back();
    double lambda2 = -1.0;
    double lambda_min = 1.0;
    for (const auto& block : blocks) {
      for (double ev : block) {
        lambda2 = std::max(lambda2, ev);
        lambda_min = std::min(lambda_min, ev);
      }
    }
    if (lambda2 > 1.0 - 1e-9) throw NumericalError("eigenvalue 1 is not simple", 1.0 - lambda2);
    report.lambda2 = lambda2;
    report.lambda_min = lambda_min;
  } else {
    const std::size_t budget = options.max_iterations != 0
                                   ? options.max_iterations
                                   : static_cast<std::size_t>(10.0 * std::sqrt(static_cast<double>(n))) + 500;
    const auto lz = lanczos_extremes(graph, options.tol, budget, options.seed);
    if (lz.lambda2 > 1.0 - 1e-9) throw NumericalError("eigenvalue 1 is not simple", lz.residual);
    report.lambda2 = lz.lambda2;
    report.lambda_min = lz.lambda_min;
    report.iterations = lz.iterations;
    report.residual = lz.residual;
  }
  report.rho = std::max(report.lambda2, -report.lambda_min);
  report.is_ramanujan = report.rho <= report.rho_d + options.ramanujan_slack;
  return report;
}

TrendReport ramanujan_trend(std::span<const SpectralReport> reports, double slack) {
  if (reports.empty()) throw ValidationError("empty family");
  TrendReport trend;
  trend.d = reports.front().d;
  trend.rho_d = alon_boppana(trend.d);
  trend.slack = slack;
  trend.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    if (r.d != trend.d) throw ValidationError("family mixes degrees " + std::to_string(trend.d) + " and " + std::to_string(r.d));
    trend.members.push_back({r.n, r.rho, r.rho - trend.rho_d});
    trend.max_excess = std::max(trend.max_excess, r.rho - trend.rho_d);
  }
  std::sort(trend.members.begin(), trend.members.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  trend.all_within = trend.max_excess <= slack;
  return trend;
}

}  // namespace rcut
