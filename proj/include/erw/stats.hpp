#pragma once

// Monte-Carlo estimators and path diagnostics for recurrence, positive
// recurrence and transience.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erw/analysis.hpp"
#include "erw/error.hpp"
#include "erw/kernel.hpp"
#include "erw/parallel.hpp"
#include "erw/params.hpp"
#include "erw/pmf.hpp"
#include "erw/rng.hpp"
#include "erw/summary.hpp"
#include "erw/walk.hpp"

namespace erw {

// ---------------------------------------------------------------------------
// Hitting times of the origin

struct HittingSample {
  std::int64_t steps = 0;  // steps after time m until X = 0; equals cap when censored
  bool censored = false;
  std::int64_t cap = 0;
};

/// Runs the chain from X_m = x until it hits 0 or `cap` steps have elapsed.
template <RandomSource G>
HittingSample hitting_time(std::int64_t m, std::int64_t x, double p, std::int64_t cap, G& gen) {
  std::int64_t position = x;
  std::int64_t n = m;
  for (std::int64_t step = 1; step <= cap; ++step) {
    position += bernoulli(gen, up_probability(position, n, p)) ? 1 : -1;
    ++n;
    if (position == 0) {
      return {step, false, cap};
    }
  }
  return {cap, true, cap};
}

inline void require_hitting_start(std::int64_t m, std::int64_t x, std::int64_t cap) {
  if (m < 1) {
    throw DomainError("hitting start time m must be >= 1");
  }
  if (x == 0) {
    throw DomainError("hitting start position must be nonzero");
  }
  require_reachable(x, m);
  if (cap < 1) {
    throw DomainError("hitting cap must be >= 1");
  }
}

/// Summary of tau_0 over uncensored trials; censored trials are only counted.
inline TrialSummary hitting_time_trials(std::int64_t m, std::int64_t x, const WalkParams& params, std::int64_t cap,
                                        const TrialPlan& plan) {
  require_hitting_start(m, x, cap);
  const double p = params.p();
  return run_trials<MomentAccumulator>(
             plan, [] { return MomentAccumulator{}; },
             [&](MomentAccumulator& acc, std::uint64_t trial) {
               auto gen = stream_for(plan.master_seed, trial);
               const HittingSample sample = hitting_time(m, x, p, cap, gen);
               if (sample.censored) {
                 acc.censor();
               } else {
                 acc.add(static_cast<double>(sample.steps));
               }
             },
             [](MomentAccumulator& into, const MomentAccumulator& from) { into.merge(from); })
      .summary();
}

/// 2|x| / (1 - 6p) + 1, the expected-return-time bound valid for p < 1/6.
inline double bound_positive_recurrence(double p, std::int64_t x) {
  require_probability(p, "p");
  if (!(p < 1.0 / 6.0)) {
    throw DomainError("positive-recurrence bound requires p < 1/6");
  }
  if (x == 0) {
    throw DomainError("positive-recurrence bound requires x != 0");
  }
  return 2.0 * static_cast<double>(std::abs(x)) / (1.0 - 6.0 * p) + 1.0;
}

// ---------------------------------------------------------------------------
// Path diagnostics

inline constexpr std::int64_t kLilMinHorizon = 16;

/// sqrt(2 n ln ln n), the iterated-logarithm scale.
inline double lil_scale(std::int64_t n) {
  const double dn = static_cast<double>(n);
  return std::sqrt(2.0 * dn * std::log(std::log(dn)));
}

/// sqrt(2 n ln n ln ln ln n), the scale at the critical point p = 3/4.
inline double lil_critical_scale(std::int64_t n) {
  const double dn = static_cast<double>(n);
  return std::sqrt(2.0 * dn * std::log(dn) * std::log(std::log(std::log(dn))));
}

struct PathDiagnostics {
  std::int64_t horizon = 0;
  std::int64_t zero_hits = 0;
  std::optional<std::int64_t> last_return;
  std::int64_t sign_changes = 0;
  std::optional<double> max_lil_stat;      // over 16 <= n <= horizon
  std::optional<double> max_lil_critical;  // over 16 <= n <= horizon
};

/// One-pass accumulator over (n, X_n) for n = 1, 2, ...
class PathDiagnosticsAccumulator {
 public:
  void observe(std::int64_t n, std::int64_t x) {
    result_.horizon = n;
    if (x == 0) {
      ++result_.zero_hits;
      result_.last_return = n;
    } else {
      const int sign = x > 0 ? 1 : -1;
      if (last_sign_ != 0 && sign != last_sign_) {
        ++result_.sign_changes;
      }
      last_sign_ = sign;
    }
    if (n >= kLilMinHorizon) {
      const double magnitude = static_cast<double>(x < 0 ? -x : x);
      const double lil = magnitude / lil_scale(n);
      const double critical = magnitude / lil_critical_scale(n);
      result_.max_lil_stat = std::max(result_.max_lil_stat.value_or(lil), lil);
      result_.max_lil_critical = std::max(result_.max_lil_critical.value_or(critical), critical);
    }
  }

  const PathDiagnostics& result() const noexcept { return result_; }

 private:
  PathDiagnostics result_;
  int last_sign_ = 0;
};

inline PathDiagnostics path_diagnostics(const Trajectory& path) {
  PathDiagnosticsAccumulator acc;
  for (std::size_t k = 0; k < path.positions.size(); ++k) {
    acc.observe(static_cast<std::int64_t>(k + 1), path.positions[k]);
  }
  return acc.result();
}

/// Diagnostics for independent paths, streamed without storing positions.
inline std::vector<PathDiagnostics> path_diagnostics_trials(const WalkParams& params, std::int64_t horizon,
                                                            SamplingMode mode, const TrialPlan& plan) {
  const WalkMode walk_mode = WalkMode::of(mode);
  return collect_trials<PathDiagnostics>(plan, [&](std::uint64_t trial) {
    auto gen = stream_for(plan.master_seed, trial);
    PathDiagnosticsAccumulator acc;
    walk_positions(params, horizon, walk_mode, gen, [&](std::int64_t n, std::int64_t x) {
      acc.observe(n, x);
      return true;
    });
    return acc.result();
  });
}

// ---------------------------------------------------------------------------
// Return-probability curve

struct CurvePoint {
  std::int64_t horizon = 0;
  std::uint64_t trials = 0;
  std::uint64_t survivors = 0;  // paths with no zero in (0, horizon]
  double no_return_fraction = 0.0;
};

/// Fraction of paths with no return to 0 by each horizon. All horizons are
/// read off the same paths, so the curve is nonincreasing.
inline std::vector<CurvePoint> return_probability_curve(const WalkParams& params, const std::vector<std::int64_t>& horizons,
                                                        SamplingMode mode, const TrialPlan& plan) {
  if (horizons.empty()) {
    throw DomainError("return_probability_curve needs at least one horizon");
  }
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1])) {
      throw DomainError("horizons must be positive and strictly increasing");
    }
  }
  if (plan.trials < 1) {
    throw DomainError("return_probability_curve needs at least one trial");
  }
  const WalkMode walk_mode = WalkMode::of(mode);
  const std::int64_t longest = horizons.back();
  using Counts = std::vector<std::uint64_t>;
  const Counts survivors = run_trials<Counts>(
      plan, [&] { return Counts(horizons.size(), 0); },
      [&](Counts& acc, std::uint64_t trial) {
        auto gen = stream_for(plan.master_seed, trial);
        std::int64_t first_return = 0;
        walk_positions(params, longest, walk_mode, gen, [&](std::int64_t n, std::int64_t x) {
          if (x == 0) {
            first_return = n;
            return false;
          }
          return true;
        });
        for (std::size_t i = 0; i < horizons.size(); ++i) {
          if (first_return == 0 || first_return > horizons[i]) {
            ++acc[i];
          }
        }
      },
      [](Counts& into, const Counts& from) {
        for (std::size_t i = 0; i < into.size(); ++i) {
          into[i] += from[i];
        }
      });
  std::vector<CurvePoint> curve;
  curve.reserve(horizons.size());
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    curve.push_back({horizons[i], plan.trials, survivors[i],
                     static_cast<double>(survivors[i]) / static_cast<double>(plan.trials)});
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Transience: the martingale M_n = a_n X_n

struct MassEstimate {
  std::int64_t horizon = 0;
  TrialSummary summary;           // of M_horizon
  double epsilon = 0.0;
  double fraction_above_epsilon = 0.0;  // fraction of paths with |M_horizon| > epsilon
};

/// Samples M_N = a_N X_N at each horizon N, read off shared paths.
inline std::vector<MassEstimate> transience_mass_estimate(const WalkParams& params, const std::vector<std::int64_t>& horizons,
                                                          double epsilon, const TrialPlan& plan) {
  if (!(params.p() > 0.75)) {
    throw DomainError("transience diagnostic requires p > 3/4");
  }
  if (horizons.empty()) {
    throw DomainError("transience_mass_estimate needs at least one horizon");
  }
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1])) {
      throw DomainError("horizons must be positive and strictly increasing");
    }
  }
  if (!(epsilon >= 0.0)) {
    throw DomainError("epsilon must be nonnegative");
  }
  const ScalingSequence a(params.p(), horizons.back());
  struct Acc {
    std::vector<MomentAccumulator> moments;
    std::vector<std::uint64_t> above;
  };
  const WalkMode walk_mode = WalkMode::marginal();
  const Acc total = run_trials<Acc>(
      plan, [&] { return Acc{std::vector<MomentAccumulator>(horizons.size()), std::vector<std::uint64_t>(horizons.size(), 0)}; },
      [&](Acc& acc, std::uint64_t trial) {
        auto gen = stream_for(plan.master_seed, trial);
        std::size_t next = 0;
        walk_positions(params, horizons.back(), walk_mode, gen, [&](std::int64_t n, std::int64_t x) {
          if (n == horizons[next]) {
            const double martingale = a.at(n) * static_cast<double>(x);
            acc.moments[next].add(martingale);
            if (std::abs(martingale) > epsilon) {
              ++acc.above[next];
            }
            ++next;
          }
          return true;
        });
      },
      [](Acc& into, const Acc& from) {
        for (std::size_t i = 0; i < into.moments.size(); ++i) {
          into.moments[i].merge(from.moments[i]);
          into.above[i] += from.above[i];
        }
      });
  std::vector<MassEstimate> out;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    out.push_back({horizons[i], total.moments[i].summary(), epsilon,
                   static_cast<double>(total.above[i]) / static_cast<double>(plan.trials)});
  }
  return out;
}

inline MassEstimate transience_mass_estimate(const WalkParams& params, std::int64_t horizon, double epsilon,
                                             const TrialPlan& plan) {
  return transience_mass_estimate(params, std::vector<std::int64_t>{horizon}, epsilon, plan).front();
}

// ---------------------------------------------------------------------------
// Empirical law of X_n

/// Terminal counts of X_n over independent paths; index i is position -n + 2i.
inline std::vector<std::uint64_t> terminal_counts(const WalkParams& params, std::int64_t n, const WalkMode& mode,
                                                  const TrialPlan& plan) {
  if (n < 1) {
    throw DomainError("terminal distribution needs n >= 1");
  }
  using Counts = std::vector<std::uint64_t>;
  return run_trials<Counts>(
      plan, [&] { return Counts(static_cast<std::size_t>(n + 1), 0); },
      [&](Counts& acc, std::uint64_t trial) {
        auto gen = stream_for(plan.master_seed, trial);
        std::int64_t last = 0;
        walk_positions(params, n, mode, gen, [&](std::int64_t, std::int64_t x) {
          last = x;
          return true;
        });
        ++acc[static_cast<std::size_t>((last + n) / 2)];
      },
      [](Counts& into, const Counts& from) {
        for (std::size_t i = 0; i < into.size(); ++i) {
          into[i] += from[i];
        }
      });
}

inline Pmf empirical_distribution(const WalkParams& params, std::int64_t n, const WalkMode& mode, const TrialPlan& plan) {
  return pmf_from_counts(n, terminal_counts(params, n, mode, plan));
}

}  // namespace erw
