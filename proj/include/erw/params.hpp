#pragma once

#include <cmath>
#include <string>

#include "erw/error.hpp"

namespace erw {

inline void require_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1]");
  }
}

/// Memory parameter p (copy probability) and first-step bias r.
class WalkParams {
 public:
  WalkParams(double p, double r) : p_(p), r_(r) {
    require_probability(p, "p");
    require_probability(r, "r");
  }

  double p() const noexcept { return p_; }
  double r() const noexcept { return r_; }

  friend bool operator==(const WalkParams&, const WalkParams&) = default;

 private:
  double p_;
  double r_;
};

}  // namespace erw
