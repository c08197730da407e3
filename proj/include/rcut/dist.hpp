#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rcut {

using Vertex = std::uint32_t;

// Probability vector over the vertex set of a graph.
class Dist {
 public:
  // Accepts nonnegative masses whose sum is within 1e-9 of one and
  // renormalizes; anything further off is rejected.
  explicit Dist(std::vector<double> mass);

  static Dist delta(std::size_t n, Vertex v);
  static Dist uniform(std::size_t n);

  // Skips the normalization check. For operator outputs whose mass is
  // conserved by construction.
  static Dist adopt(std::vector<double> mass) noexcept;

  std::size_t size() const noexcept { return mass_.size(); }
  double operator[](std::size_t x) const noexcept { return mass_[x]; }
  std::span<const double> mass() const noexcept { return mass_; }
  std::size_t support_size() const noexcept;

  static constexpr double kRenormalizeTolerance = 1e-9;

 private:
  Dist() = default;
  std::vector<double> mass_;
};

}  // namespace rcut
