#pragma once

// Finite M-replica mean-field system. Each call to rmf_step moves one
// replica: the mover is uniform over all M replicas, the influencer uniform
// over the other M - 1, and the mover copies (probability p) or reverses a
// uniformly chosen past step of the influencer.

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "erw/error.hpp"
#include "erw/history.hpp"
#include "erw/kernel.hpp"
#include "erw/parallel.hpp"
#include "erw/params.hpp"
#include "erw/rng.hpp"
#include "erw/summary.hpp"
#include "erw/walk.hpp"

namespace erw {

struct RmfParams {
  std::int64_t replicas = 2;  // M
  double p = 0.5;
  std::int64_t total_steps = 0;

  RmfParams(std::int64_t replicas_, double p_, std::int64_t total_steps_)
      : replicas(replicas_), p(p_), total_steps(total_steps_) {
    if (replicas < 2) {
      throw DomainError("RMF needs M >= 2: the influencer is drawn among the other M - 1 replicas");
    }
    require_probability(p, "p");
    if (total_steps < 0) {
      throw DomainError("total_steps must be nonnegative");
    }
  }
};

struct Replica {
  std::int64_t n = 0;
  std::int64_t x = 0;
  PackedHistory history;
};

class RmfState {
 public:
  explicit RmfState(std::vector<Replica> replicas) : replicas_(std::move(replicas)) {}

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(replicas_.size()); }
  const Replica& replica(std::int64_t i) const { return replicas_.at(static_cast<std::size_t>(i)); }
  const std::vector<Replica>& replicas() const noexcept { return replicas_; }

  /// Sum of the per-replica step counts.
  std::int64_t total_steps() const noexcept {
    std::int64_t total = 0;
    for (const auto& r : replicas_) {
      total += r.n;
    }
    return total;
  }

  void advance(std::int64_t i, int step) {
    auto& r = replicas_.at(static_cast<std::size_t>(i));
    r.history.push(step);
    r.x += step;
    ++r.n;
  }

 private:
  std::vector<Replica> replicas_;
};

/// Every replica makes its initial jump to -1 or +1 with probability 1/2.
template <RandomSource G>
RmfState rmf_init(std::int64_t replicas, G& gen) {
  if (replicas < 2) {
    throw DomainError("RMF needs M >= 2");
  }
  std::vector<Replica> init(static_cast<std::size_t>(replicas));
  for (auto& r : init) {
    const int step = bernoulli(gen, 0.5) ? 1 : -1;
    r.history.push(step);
    r.x = step;
    r.n = 1;
  }
  return RmfState(std::move(init));
}

template <RandomSource G>
void rmf_step(RmfState& state, double p, SamplingMode mode, G& gen) {
  const auto M = static_cast<std::uint64_t>(state.size());
  if (M < 2) {
    throw StateError("RMF state must hold at least two replicas");
  }
  const auto mover = static_cast<std::int64_t>(uniform_index(gen, M));
  auto influencer = static_cast<std::int64_t>(uniform_index(gen, M - 1));
  if (influencer >= mover) {
    ++influencer;
  }
  const Replica& source = state.replica(influencer);
  if (source.n < 1) {
    throw StateError("RMF state is not initialized");
  }
  int step = 0;
  if (mode == SamplingMode::history) {
    const auto k = uniform_index(gen, static_cast<std::uint64_t>(source.n));
    const int remembered = source.history[static_cast<std::size_t>(k)];
    step = bernoulli(gen, p) ? remembered : -remembered;
  } else {
    step = bernoulli(gen, up_probability(source.x, source.n, p)) ? 1 : -1;
  }
  state.advance(mover, step);
}

struct RmfRunResult {
  RmfState state;
  std::vector<double> ratios;      // x_i / n_i
  std::vector<double> abs_ratios;  // |x_i| / n_i
  double mean_ratio = 0.0;
  double mean_abs_ratio = 0.0;
};

template <RandomSource G>
RmfRunResult rmf_run(const RmfParams& params, SamplingMode mode, G& gen) {
  RmfState state = rmf_init(params.replicas, gen);
  for (std::int64_t s = 0; s < params.total_steps; ++s) {
    rmf_step(state, params.p, mode, gen);
  }
  RmfRunResult result{std::move(state), {}, {}, 0.0, 0.0};
  for (const auto& r : result.state.replicas()) {
    const double ratio = static_cast<double>(r.x) / static_cast<double>(r.n);
    result.ratios.push_back(ratio);
    result.abs_ratios.push_back(std::abs(ratio));
    result.mean_ratio += ratio;
    result.mean_abs_ratio += std::abs(ratio);
  }
  result.mean_ratio /= static_cast<double>(params.replicas);
  result.mean_abs_ratio /= static_cast<double>(params.replicas);
  return result;
}

/// Per-run replica averages for independent runs, plus their summaries.
struct RmfRunsReport {
  std::vector<double> mean_ratio;      // per run, average of x_i / n_i over replicas
  std::vector<double> mean_abs_ratio;  // per run, average of |x_i| / n_i
  TrialSummary signed_summary;
  TrialSummary abs_summary;
  // Pearson correlation of x_1/n_1 and x_2/n_2 across runs; probes how far
  // replicas are from independent.
  double replica_correlation = std::numeric_limits<double>::quiet_NaN();
};

inline RmfRunsReport rmf_runs(const RmfParams& params, SamplingMode mode, const TrialPlan& plan) {
  struct Run {
    double mean_ratio = 0.0;
    double mean_abs_ratio = 0.0;
    double first = 0.0;
    double second = 0.0;
  };
  const auto runs = collect_trials<Run>(plan, [&](std::uint64_t trial) {
    auto gen = stream_for(plan.master_seed, trial);
    const RmfRunResult r = rmf_run(params, mode, gen);
    return Run{r.mean_ratio, r.mean_abs_ratio, r.ratios[0], r.ratios[1]};
  });
  RmfRunsReport report;
  MomentAccumulator signed_acc;
  MomentAccumulator abs_acc;
  MomentAccumulator first_acc;
  MomentAccumulator second_acc;
  for (const Run& run : runs) {
    report.mean_ratio.push_back(run.mean_ratio);
    report.mean_abs_ratio.push_back(run.mean_abs_ratio);
    signed_acc.add(run.mean_ratio);
    abs_acc.add(run.mean_abs_ratio);
    first_acc.add(run.first);
    second_acc.add(run.second);
  }
  report.signed_summary = signed_acc.summary();
  report.abs_summary = abs_acc.summary();
  if (runs.size() > 1) {
    double covariance = 0.0;
    for (const Run& run : runs) {
      covariance += (run.first - first_acc.mean()) * (run.second - second_acc.mean());
    }
    covariance /= static_cast<double>(runs.size() - 1);
    const double scale = std::sqrt(first_acc.variance() * second_acc.variance());
    if (scale > 0.0) {
      report.replica_correlation = covariance / scale;
    }
  }
  return report;
}

struct RmfBound {
  double p;
  double value;
};

/// 1 / (2(1 - 2p)) for p < 1/4 and 1 / (2(2p - 1)) for p >= 3/4.
inline RmfBound rmf_bound(double p) {
  require_probability(p, "p");
  if (p < 0.25) {
    return {p, 1.0 / (2.0 * (1.0 - 2.0 * p))};
  }
  if (p >= 0.75) {
    return {p, 1.0 / (2.0 * (2.0 * p - 1.0))};
  }
  throw DomainError("no RMF bound is available for p in [1/4, 3/4)");
}

// ---------------------------------------------------------------------------
// Exact law for M = 2

struct RmfOutcome {
  std::int64_t x1 = 0;
  std::int64_t n1 = 0;
  std::int64_t x2 = 0;
  std::int64_t n2 = 0;

  auto operator<=>(const RmfOutcome&) const = default;
};

using RmfJointLaw = std::map<RmfOutcome, double>;

inline constexpr std::int64_t kMaxRmfExactSteps = 10;

/// Exact joint law of (x_1, n_1, x_2, n_2) for M = 2 after `steps` moves,
/// by enumerating every branch: initial jumps, mover, memory index and
/// copy/reverse. Histories are tracked in full, so no kernel formula is used.
inline RmfJointLaw rmf_exact_small(std::int64_t steps, double p) {
  require_probability(p, "p");
  if (steps < 0) {
    throw DomainError("steps must be nonnegative");
  }
  if (steps > kMaxRmfExactSteps) {
    throw ResourceError("rmf_exact_small supports at most " + std::to_string(kMaxRmfExactSteps) + " steps");
  }
  struct Path {
    std::uint32_t bits = 0;  // bit k set: step k + 1 was +1
    std::uint32_t length = 0;
    auto operator<=>(const Path&) const = default;
  };
  using Pair = std::pair<Path, Path>;
  std::map<Pair, double> law;
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      law[{Path{a == 1 ? 1u : 0u, 1}, Path{b == 1 ? 1u : 0u, 1}}] += 0.25;
    }
  }
  const auto extended = [](Path path, int step) {
    if (step == 1) {
      path.bits |= 1u << path.length;
    }
    ++path.length;
    return path;
  };
  for (std::int64_t s = 0; s < steps; ++s) {
    std::map<Pair, double> next;
    for (const auto& [pair, mass] : law) {
      for (int mover = 0; mover < 2; ++mover) {
        const Path& source = mover == 0 ? pair.second : pair.first;
        const double per_index = mass * 0.5 / static_cast<double>(source.length);
        for (std::uint32_t k = 0; k < source.length; ++k) {
          const int remembered = ((source.bits >> k) & 1u) ? 1 : -1;
          for (const auto& [step, weight] : {std::pair{remembered, p}, std::pair{-remembered, 1.0 - p}}) {
            if (weight == 0.0) {
              continue;
            }
            Pair child = pair;
            if (mover == 0) {
              child.first = extended(child.first, step);
            } else {
              child.second = extended(child.second, step);
            }
            next[child] += per_index * weight;
          }
        }
      }
    }
    law = std::move(next);
  }
  const auto position = [](const Path& path) {
    return 2 * static_cast<std::int64_t>(std::popcount(path.bits)) - static_cast<std::int64_t>(path.length);
  };
  RmfJointLaw joint;
  for (const auto& [pair, mass] : law) {
    joint[{position(pair.first), pair.first.length, position(pair.second), pair.second.length}] += mass;
  }
  return joint;
}

/// Empirical joint law of the M = 2 system after `steps` moves.
inline RmfJointLaw rmf_empirical_small(std::int64_t steps, double p, SamplingMode mode, const TrialPlan& plan) {
  const RmfParams params(2, p, steps);
  using Counts = std::map<RmfOutcome, std::uint64_t>;
  const Counts counts = run_trials<Counts>(
      plan, [] { return Counts{}; },
      [&](Counts& acc, std::uint64_t trial) {
        auto gen = stream_for(plan.master_seed, trial);
        RmfState state = rmf_init(2, gen);
        for (std::int64_t s = 0; s < steps; ++s) {
          rmf_step(state, p, mode, gen);
        }
        const auto& a = state.replica(0);
        const auto& b = state.replica(1);
        ++acc[{a.x, a.n, b.x, b.n}];
      },
      [](Counts& into, const Counts& from) {
        for (const auto& [key, count] : from) {
          into[key] += count;
        }
      });
  RmfJointLaw law;
  for (const auto& [key, count] : counts) {
    law[key] = static_cast<double>(count) / static_cast<double>(plan.trials);
  }
  return law;
}

inline double total_variation(const RmfJointLaw& a, const RmfJointLaw& b) {
  double l1 = 0.0;
  for (const auto& [key, mass] : a) {
    const auto it = b.find(key);
    l1 += std::abs(mass - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [key, mass] : b) {
    if (!a.contains(key)) {
      l1 += mass;
    }
  }
  return 0.5 * l1;
}

}  // namespace erw
