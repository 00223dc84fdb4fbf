#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>

#include "erw/error.hpp"
#include "erw/params.hpp"
#include "erw/rng.hpp"

namespace erw {

inline void require_step(int y) {
  if (y != 1 && y != -1) {
    throw DomainError("step must be +1 or -1, got " + std::to_string(y));
  }
}

/// True when (x, n) lies on the reachable lattice: |x| <= n and x = n mod 2.
constexpr bool reachable(std::int64_t x, std::int64_t n) noexcept {
  return n >= 0 && (x <= n && -x <= n) && ((x + n) % 2 == 0);
}

inline void require_reachable(std::int64_t x, std::int64_t n) {
  if (!reachable(x, n)) {
    throw DomainError("state (x=" + std::to_string(x) + ", n=" + std::to_string(n) +
                      ") is off the reachable lattice");
  }
}

/// Law of the first step: (1 + (2r - 1) y) / 2.
inline double first_step_prob(const WalkParams& params, int y) {
  require_step(y);
  return y == 1 ? params.r() : 1.0 - params.r();
}

// Unchecked kernel. Returns P(step = +1 | X_n = x); the down-probability is
// taken as its complement so the pair sums to exactly 1.
inline double up_probability(std::int64_t x, std::int64_t n, double p) noexcept {
  const double drift = static_cast<double>(x) * (2.0 * p - 1.0);
  const double dn = static_cast<double>(n);
  return (drift + dn) / (2.0 * dn);
}

/// One-step transition kernel pi_n(x, x + y) = (x y (2p - 1) + n) / (2n), n >= 1.
inline double kernel_prob(std::int64_t x, std::int64_t n, int y, const WalkParams& params) {
  require_step(y);
  if (n < 1) {
    throw DomainError("kernel is defined for n >= 1");
  }
  require_reachable(x, n);
  const double up = up_probability(x, n, params.p());
  return y == 1 ? up : 1.0 - up;
}

/// Rule selecting the remembered index: a pmf phi_n over {1, ..., n}.
class MemoryKernel {
 public:
  /// weight(n, k) = phi_n(k) for 1 <= k <= n.
  using Weight = std::function<double(std::int64_t n, std::int64_t k)>;

  static MemoryKernel uniform() { return MemoryKernel(); }

  static MemoryKernel from_weights(Weight weight, std::string name = "custom") {
    MemoryKernel kernel;
    kernel.weight_ = std::move(weight);
    kernel.name_ = std::move(name);
    return kernel;
  }

  bool is_uniform() const noexcept { return !weight_; }
  const std::string& name() const noexcept { return name_; }

  double prob(std::int64_t n, std::int64_t k) const {
    if (n < 1 || k < 1 || k > n) {
      throw DomainError("memory index out of {1..n}");
    }
    return weight_ ? weight_(n, k) : 1.0 / static_cast<double>(n);
  }

  /// Throws if phi_n does not sum to 1 within 1e-12 or has a negative entry.
  void validate(std::int64_t n) const {
    if (!weight_) {
      return;
    }
    double total = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      const double w = weight_(n, k);
      if (!(w >= 0.0)) {
        throw DomainError("memory kernel '" + name_ + "' has a negative weight");
      }
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw DomainError("memory kernel '" + name_ + "' does not sum to 1 at n=" + std::to_string(n));
    }
  }

  /// Draws a one-based index k ~ phi_n.
  template <RandomSource G>
  std::int64_t sample(std::int64_t n, G& gen) const {
    if (n < 1) {
      throw StateError("memory kernel needs a nonempty history");
    }
    if (!weight_) {
      return static_cast<std::int64_t>(uniform_index(gen, static_cast<std::uint64_t>(n))) + 1;
    }
    validate(n);
    const double u = uniform01(gen);
    double cumulative = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      cumulative += weight_(n, k);
      if (u < cumulative) {
        return k;
      }
    }
    // u landed in the rounding gap above the last partial sum.
    for (std::int64_t k = n; k >= 1; --k) {
      if (weight_(n, k) > 0.0) {
        return k;
      }
    }
    return n;
  }

 private:
  MemoryKernel() = default;

  Weight weight_;
  std::string name_ = "uniform";
};

}  // namespace erw
