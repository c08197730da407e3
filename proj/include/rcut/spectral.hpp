#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcut/graph.hpp"

namespace rcut {

enum class EigenMethod { automatic, dense, iterative };

std::string to_string(EigenMethod m);
EigenMethod parse_eigen_method(const std::string& s);

struct SpectralOptions {
  double tol = 1e-8;
  double ramanujan_slack = 1e-6;
  EigenMethod method = EigenMethod::automatic;
  // Largest block handed to the dense solver.
  std::size_t dense_threshold = 2000;
  // 0 selects the default budget 10*sqrt(n) + 500.
  std::size_t max_iterations = 0;
  std::uint64_t seed = 0x5eed;
};

// A fixed-point-free graph automorphism tau (tau[v] is the image of v)
// whose orbits all have the same size m. The walk operator commutes with it,
// so the dense path can split l2(G) into m eigenspaces of tau, each of
// dimension n/m.
struct CyclicSymmetry {
  std::vector<Vertex> tau;
};

struct SpectralReport {
  std::size_t n = 0;
  std::size_t d = 0;
  double rho = 0.0;
  double lambda2 = 0.0;
  double lambda_min = 0.0;
  double rho_d = 0.0;
  bool is_ramanujan = false;
  EigenMethod method = EigenMethod::dense;
  double tol = 0.0;
  double slack = 0.0;
  // Iterative path only.
  std::size_t iterations = 0;
  double residual = 0.0;
  // Dense path: number of symmetry blocks solved.
  std::size_t blocks = 0;
};

// 2 sqrt(d-1) / d.
double alon_boppana(std::size_t d);

SpectralReport spectral_report(const Graph& graph, const SpectralOptions& options = {},
                               const CyclicSymmetry* symmetry = nullptr);

// Full spectrum of P in descending order (including the eigenvalue 1).
std::vector<double> dense_spectrum(const Graph& graph, const CyclicSymmetry* symmetry = nullptr);

struct LanczosResult {
  double lambda2 = 0.0;
  double lambda_min = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// Extremal eigenvalues of P on the orthogonal complement of the constants.
// Throws NumericalError (carrying the residual) if not converged in budget.
LanczosResult lanczos_extremes(const Graph& graph, double tol, std::size_t max_iterations, std::uint64_t seed);

struct TrendMember {
  std::size_t n = 0;
  double rho = 0.0;
  double excess = 0.0;  // rho - rho_d
};

struct TrendReport {
  std::size_t d = 0;
  double rho_d = 0.0;
  double slack = 0.0;
  double max_excess = 0.0;
  bool all_within = false;  // every member has rho <= rho_d + slack
  std::vector<TrendMember> members;  // sorted by n
};

// The slack is a finite-size tolerance, not a quantity with a limit theory.
TrendReport ramanujan_trend(std::span<const SpectralReport> reports, double slack = 1e-6);

}  // namespace rcut
