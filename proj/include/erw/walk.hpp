#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "erw/error.hpp"
#include "erw/history.hpp"
#include "erw/kernel.hpp"
#include "erw/params.hpp"
#include "erw/rng.hpp"

namespace erw {

enum class SamplingMode { marginal, history };

/// Step count, position and (optionally) the packed step history.
class WalkState {
 public:
  /// The walk at time 0, sitting at the origin.
  static WalkState origin(bool track_history) {
    WalkState state(0, 0);
    if (track_history) {
      state.history_.emplace();
    }
    return state;
  }

  /// Markov-only state at (n, x), no history.
  WalkState(std::int64_t n, std::int64_t x) : n_(n), x_(x) { require_reachable(x, n); }

  /// State reconstructed from a full history.
  explicit WalkState(PackedHistory history)
      : n_(static_cast<std::int64_t>(history.size())), x_(history.sum()), history_(std::move(history)) {}

  std::int64_t n() const noexcept { return n_; }
  std::int64_t x() const noexcept { return x_; }
  bool has_history() const noexcept { return history_.has_value(); }
  const PackedHistory& history() const {
    if (!history_) {
      throw StateError("walk state carries no history");
    }
    return *history_;
  }

  void advance(int step) {
    require_step(step);
    if (history_) {
      history_->push(step);
    }
    ++n_;
    x_ += step;
  }

 private:
  std::int64_t n_;
  std::int64_t x_;
  std::optional<PackedHistory> history_;
};

/// Sampled path. positions[k - 1] holds X_k.
struct Trajectory {
  WalkParams params;
  PackedHistory steps;
  std::vector<std::int64_t> positions;

  std::int64_t horizon() const noexcept { return static_cast<std::int64_t>(positions.size()); }
};

template <RandomSource G>
int sample_first_step(const WalkParams& params, G& gen) {
  return bernoulli(gen, params.r()) ? 1 : -1;
}

/// Draws eta_{n+1} from the kernel at (x, n). Requires n >= 1.
template <RandomSource G>
int sample_step_marginal(const WalkState& state, const WalkParams& params, G& gen) {
  if (state.n() < 1) {
    throw StateError("marginal step needs n >= 1; the first step follows the r-rule");
  }
  return bernoulli(gen, up_probability(state.x(), state.n(), params.p())) ? 1 : -1;
}

/// Draws k ~ phi_n, then copies eta_k with probability p or reverses it.
template <RandomSource G>
int sample_step_history(const PackedHistory& history, const MemoryKernel& kernel,
                        const WalkParams& params, G& gen) {
  if (history.empty()) {
    throw StateError("history step needs a nonempty history; the first step follows the r-rule");
  }
  const std::int64_t k = kernel.sample(static_cast<std::int64_t>(history.size()), gen);
  const int remembered = history[static_cast<std::size_t>(k - 1)];
  return bernoulli(gen, params.p()) ? remembered : -remembered;
}

/// Sampling mode for whole trajectories: marginal, or history with a memory kernel.
class WalkMode {
 public:
  static WalkMode marginal() { return WalkMode(SamplingMode::marginal, MemoryKernel::uniform()); }
  static WalkMode history(MemoryKernel kernel = MemoryKernel::uniform()) {
    return WalkMode(SamplingMode::history, std::move(kernel));
  }
  static WalkMode of(SamplingMode mode) { return mode == SamplingMode::marginal ? marginal() : history(); }

  /// Marginal sampling with a non-uniform kernel is rejected when a walk starts.
  WalkMode(SamplingMode kind, MemoryKernel kernel) : kind_(kind), kernel_(std::move(kernel)) {}

  SamplingMode kind() const noexcept { return kind_; }
  const MemoryKernel& kernel() const noexcept { return kernel_; }

 private:

  SamplingMode kind_;
  MemoryKernel kernel_;
};

/// Streams X_1..X_{n_steps} to `visit(n, x)` without materializing the path.
template <RandomSource G, class Visit>
void walk_positions(const WalkParams& params, std::int64_t n_steps, const WalkMode& mode, G& gen,
                    Visit&& visit) {
  if (n_steps < 1) {
    throw DomainError("n_steps must be >= 1");
  }
  if (mode.kind() == SamplingMode::marginal && !mode.kernel().is_uniform()) {
    throw ConfigError(ConfigError::Kind::invalid_combination, "mode",
                      "marginal sampling is only valid for uniform memory");
  }
  const double p = params.p();
  std::int64_t x = sample_first_step(params, gen);
  if (!visit(std::int64_t{1}, x)) {
    return;
  }
  if (mode.kind() == SamplingMode::marginal) {
    for (std::int64_t n = 1; n < n_steps; ++n) {
      x += bernoulli(gen, up_probability(x, n, p)) ? 1 : -1;
      if (!visit(n + 1, x)) {
        return;
      }
    }
    return;
  }
  PackedHistory history;
  history.reserve(static_cast<std::size_t>(n_steps));
  history.push(static_cast<int>(x));
  for (std::int64_t n = 1; n < n_steps; ++n) {
    const int step = sample_step_history(history, mode.kernel(), params, gen);
    history.push(step);
    x += step;
    if (!visit(n + 1, x)) {
      return;
    }
  }
}

template <RandomSource G>
Trajectory sample_trajectory(const WalkParams& params, std::int64_t n_steps, const WalkMode& mode, G& gen) {
  Trajectory path{params, {}, {}};
  path.positions.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n_steps, 0)));
  path.steps.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n_steps, 0)));
  std::int64_t previous = 0;
  walk_positions(params, n_steps, mode, gen, [&](std::int64_t, std::int64_t x) {
    path.steps.push(static_cast<int>(x - previous));
    path.positions.push_back(x);
    previous = x;
    return true;
  });
  return path;
}

}  // namespace erw
