#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "erw/error.hpp"

namespace erw {

/// Law of X_n on the lattice {-n, -n+2, ..., n}. mass[i] is the mass at -n + 2i.
class Pmf {
 public:
  explicit Pmf(std::int64_t n) : n_(n), mass_(static_cast<std::size_t>(n + 1), 0.0) {
    if (n < 0) {
      throw DomainError("pmf horizon must be nonnegative");
    }
  }

  std::int64_t horizon() const noexcept { return n_; }
  std::size_t size() const noexcept { return mass_.size(); }

  static constexpr std::int64_t position_of(std::int64_t n, std::size_t index) noexcept {
    return -n + 2 * static_cast<std::int64_t>(index);
  }
  std::int64_t position(std::size_t index) const noexcept { return position_of(n_, index); }

  /// Mass at x; zero off the parity-correct lattice.
  double at(std::int64_t x) const noexcept {
    if (x < -n_ || x > n_ || (x + n_) % 2 != 0) {
      return 0.0;
    }
    return mass_[static_cast<std::size_t>((x + n_) / 2)];
  }

  void add(std::int64_t x, double mass) {
    if (x < -n_ || x > n_ || (x + n_) % 2 != 0) {
      throw DomainError("position off the lattice of X_n");
    }
    mass_[static_cast<std::size_t>((x + n_) / 2)] += mass;
  }

  const std::vector<double>& masses() const noexcept { return mass_; }

  double total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

  double mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      m += static_cast<double>(position(i)) * mass_[i];
    }
    return m;
  }

 private:
  std::int64_t n_;
  std::vector<double> mass_;
};

/// Empirical pmf from counts over the lattice of X_n.
inline Pmf pmf_from_counts(std::int64_t n, const std::vector<std::uint64_t>& counts) {
  Pmf pmf(n);
  if (counts.size() != pmf.size()) {
    throw DomainError("count vector does not match the lattice of X_n");
  }
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (total > 0) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      pmf.add(pmf.position(i), static_cast<double>(counts[i]) / total);
    }
  }
  return pmf;
}

/// Total-variation distance: half the L1 distance.
inline double total_variation(const Pmf& a, const Pmf& b) {
  if (a.horizon() != b.horizon()) {
    throw DomainError("total variation needs pmfs over the same horizon");
  }
  double l1 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    l1 += std::abs(a.masses()[i] - b.masses()[i]);
  }
  return 0.5 * l1;
}

}  // namespace erw
