#pragma once

// Analytic side of the walk: the time-n generator, moment recursions, the
// martingale normalization a_n and Monte-Carlo Dynkin residuals.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "erw/error.hpp"
#include "erw/kernel.hpp"
#include "erw/parallel.hpp"
#include "erw/params.hpp"
#include "erw/rng.hpp"
#include "erw/summary.hpp"

namespace erw {

/// Real-valued function on the integers.
using TestFunction = std::function<double(std::int64_t)>;

/// (L_n f)(x) = w+ (f(x+1) - f(x)) + w- (f(x-1) - f(x)) with
/// w+ = (x(2p-1) + n) / 2n and w- = (x(1-2p) + n) / 2n.
///
/// Any integer x is accepted; off the reachable lattice the weights may
/// leave [0, 1].
inline double generator_apply(const TestFunction& f, std::int64_t x, std::int64_t n, const WalkParams& params) {
  if (n < 1) {
    throw DomainError("generator is defined for n >= 1");
  }
  const double p = params.p();
  const double dx = static_cast<double>(x);
  const double dn = static_cast<double>(n);
  const double up = (dx * (2.0 * p - 1.0) + dn) / (2.0 * dn);
  const double down = (dx * (1.0 - 2.0 * p) + dn) / (2.0 * dn);
  const double fx = f(x);
  return up * (f(x + 1) - fx) + down * (f(x - 1) - fx);
}

/// E[X_1], ..., E[X_N] from E[X_1] = 2r - 1, E[X_{n+1}] = (1 + (2p-1)/n) E[X_n].
inline std::vector<double> mean_sequence(const WalkParams& params, std::int64_t N) {
  if (N < 1) {
    throw DomainError("mean_sequence needs N >= 1");
  }
  std::vector<double> means(static_cast<std::size_t>(N));
  means[0] = 2.0 * params.r() - 1.0;
  const double drift = 2.0 * params.p() - 1.0;
  for (std::int64_t n = 1; n < N; ++n) {
    means[static_cast<std::size_t>(n)] =
        (1.0 + drift / static_cast<double>(n)) * means[static_cast<std::size_t>(n - 1)];
  }
  return means;
}

/// Gamma function (Lanczos, g = 7, nine terms); relative error well below
/// 1e-10 on (0, 2].
inline double gamma_fn(double z) {
  if (!(z > 0.0)) {
    throw DomainError("gamma_fn is defined here for z > 0");
  }
  static constexpr std::array<double, 9> kLanczos{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_fn(1.0 - z));
  }
  const double w = z - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (w + static_cast<double>(i));
  }
  const double t = w + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, w + 0.5) * std::exp(-t) * series;
}

/// a_1 = 1, a_{n+1} = a_n n / (n + 2p - 1): the normalization that makes
/// a_n X_n a martingale. n^{2p-1} a_n tends to Gamma(2p).
class ScalingSequence {
 public:
  ScalingSequence(double p, std::int64_t N) : p_(p) {
    require_probability(p, "p");
    if (!(p > 0.0)) {
      throw DomainError("scaling sequence needs p > 0 (a_2 has a pole at p = 0)");
    }
    if (N < 1) {
      throw DomainError("scaling sequence needs N >= 1");
    }
    values_.resize(static_cast<std::size_t>(N));
    values_[0] = 1.0;
    for (std::int64_t n = 1; n < N; ++n) {
      const double dn = static_cast<double>(n);
      values_[static_cast<std::size_t>(n)] = values_[static_cast<std::size_t>(n - 1)] * dn / (dn + 2.0 * p - 1.0);
    }
  }

  double p() const noexcept { return p_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(values_.size()); }

  /// a_n for 1 <= n <= size().
  double at(std::int64_t n) const {
    if (n < 1 || n > size()) {
      throw DomainError("scaling sequence index out of range");
    }
    return values_[static_cast<std::size_t>(n - 1)];
  }

  /// n^{2p-1} a_n.
  double scaled(std::int64_t n) const { return std::pow(static_cast<double>(n), 2.0 * p_ - 1.0) * at(n); }

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  double p_;
  std::vector<double> values_;
};

inline ScalingSequence scaling_sequence(double p, std::int64_t N) { return ScalingSequence(p, N); }

/// a_{n+1} (x + (2p-1) x / n) - a_n x, i.e. E[M_{n+1} | X_n = x] - M_n.
/// `a` must cover index n + 1.
inline double martingale_residual(std::int64_t x, std::int64_t n, const ScalingSequence& a) {
  if (n < 1) {
    throw DomainError("martingale residual needs n >= 1");
  }
  const double dx = static_cast<double>(x);
  const double expected_next = dx + (2.0 * a.p() - 1.0) * dx / static_cast<double>(n);
  return a.at(n + 1) * expected_next - a.at(n) * dx;
}

inline double martingale_residual(std::int64_t x, std::int64_t n, double p) {
  return martingale_residual(x, n, ScalingSequence(p, n + 1));
}

/// One Dynkin residual D = f(X_N) - f(x) - sum_{k=m}^{N-1} (L_k f)(X_k) for the
/// chain started at X_m = x.
template <RandomSource G>
double dynkin_residual(const TestFunction& f, const WalkParams& params, std::int64_t m, std::int64_t x,
                       std::int64_t N, G& gen) {
  double compensator = 0.0;
  std::int64_t position = x;
  for (std::int64_t k = m; k < N; ++k) {
    compensator += generator_apply(f, position, k, params);
    position += bernoulli(gen, up_probability(position, k, params.p())) ? 1 : -1;
  }
  return f(position) - f(x) - compensator;
}

inline TrialSummary dynkin_residual_samples(const TestFunction& f, const WalkParams& params, std::int64_t m,
                                            std::int64_t x, std::int64_t N, const TrialPlan& plan) {
  if (m < 1) {
    throw DomainError("Dynkin start time must be >= 1");
  }
  require_reachable(x, m);
  if (N <= m) {
    throw DomainError("Dynkin horizon N must exceed the start time m");
  }
  return run_trials<MomentAccumulator>(
             plan, [] { return MomentAccumulator{}; },
             [&](MomentAccumulator& acc, std::uint64_t trial) {
               auto gen = stream_for(plan.master_seed, trial);
               acc.add(dynkin_residual(f, params, m, x, N, gen));
             },
             [](MomentAccumulator& into, const MomentAccumulator& from) { into.merge(from); })
      .summary();
}

}  // namespace erw
