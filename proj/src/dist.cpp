#include "rcut/dist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rcut/error.hpp"
#include "rcut/numeric.hpp"

namespace rcut {

Dist::Dist(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw ValidationError("distribution over an empty vertex set");
  for (double m : mass_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw ValidationError("distribution has a negative or non-finite mass");
  }
  const double total = compensated_sum(mass_);
  if (std::abs(total - 1.0) > kRenormalizeTolerance) {
    throw ValidationError("distribution mass sums to " + std::to_string(total) + ", not 1");
  }
  if (total != 1.0) {
    for (double& m : mass_) m /= total;
  }
}

Dist Dist::delta(std::size_t n, Vertex v) {
  if (v >= n) throw ValidationError("vertex " + std::to_string(v) + " out of range");
  std::vector<double> m(n, 0.0);
  m[v] = 1.0;
  return adopt(std::move(m));
}

Dist Dist::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("distribution over an empty vertex set");
  return adopt(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Dist Dist::adopt(std::vector<double> mass) noexcept {
  Dist d;
  d.mass_ = std::move(mass);
  return d;
}

std::size_t Dist::support_size() const noexcept {
  return static_cast<std::size_t>(std::count_if(mass_.begin(), mass_.end(), [](double m) { return m > 0.0; }));
}

}  // namespace rcut
