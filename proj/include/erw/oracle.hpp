#pragma once

// Exact law of X_n by brute force over all 2^n sign sequences.
//
// Each step after the first is weighted straight from the memory rule: pick a
// past index uniformly, copy it with probability p or reverse it. Nothing
// here goes through kernel_prob, so the oracle stays an independent check
// of the Markov kernel and of both samplers.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "erw/error.hpp"
#include "erw/params.hpp"
#include "erw/pmf.hpp"

namespace erw {

inline constexpr std::int64_t kMaxOracleHorizon = 20;

namespace detail {

// 2^20 path weights land in a few bins; plain summation drifts past 1e-12.
struct CompensatedBins {
  std::vector<double> sum;
  std::vector<double> carry;

  explicit CompensatedBins(std::size_t size) : sum(size, 0.0), carry(size, 0.0) {}

  void add(std::size_t i, double value) {
    const double t = sum[i] + value;
    if (std::abs(sum[i]) >= std::abs(value)) {
      carry[i] += (sum[i] - t) + value;
    } else {
      carry[i] += (value - t) + sum[i];
    }
    sum[i] = t;
  }
};

// ups: number of +1 steps among the first `depth` steps.
inline void enumerate_paths(const WalkParams& params, std::int64_t horizon, std::int64_t depth,
                            std::int64_t ups, std::int64_t position, double weight, CompensatedBins& out) {
  if (depth == horizon) {
    out.add(static_cast<std::size_t>((position + horizon) / 2), weight);
    return;
  }
  const double p = params.p();
  const double remembered_up = static_cast<double>(ups) / static_cast<double>(depth);
  const double remembered_down = static_cast<double>(depth - ups) / static_cast<double>(depth);
  const double up = remembered_up * p + remembered_down * (1.0 - p);
  const double down = remembered_down * p + remembered_up * (1.0 - p);
  if (up > 0.0) {
    enumerate_paths(params, horizon, depth + 1, ups + 1, position + 1, weight * up, out);
  }
  if (down > 0.0) {
    enumerate_paths(params, horizon, depth + 1, ups, position - 1, weight * down, out);
  }
}

}  // namespace detail

inline Pmf exact_distribution(const WalkParams& params, std::int64_t n) {
  if (n > kMaxOracleHorizon) {
    throw ResourceError("exact_distribution enumerates 2^n paths; horizon " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(kMaxOracleHorizon));
  }
  if (n < 1) {
    throw DomainError("exact_distribution needs a horizon >= 1");
  }
  detail::CompensatedBins bins(static_cast<std::size_t>(n) + 1);
  if (params.r() > 0.0) {
    detail::enumerate_paths(params, n, 1, 1, 1, params.r(), bins);
  }
  if (params.r() < 1.0) {
    detail::enumerate_paths(params, n, 1, 0, -1, 1.0 - params.r(), bins);
  }
  Pmf pmf(n);
  for (std::size_t i = 0; i < bins.sum.size(); ++i) {
    const double mass = bins.sum[i] + bins.carry[i];
    if (mass != 0.0) {
      pmf.add(Pmf::position_of(n, i), mass);
    }
  }
  return pmf;
}

}  // namespace erw
