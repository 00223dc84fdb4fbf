#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace erw {

/// How a Monte-Carlo operation spreads its independent trials.
struct TrialPlan {
  std::uint64_t master_seed = 0;
  std::uint64_t trials = 1;
  unsigned threads = 1;  // 0: hardware concurrency
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Trials are grouped into fixed-size chunks. Each chunk is accumulated in
// trial order and the chunk accumulators are merged in chunk order, so the
// reduction is identical for every thread count.
inline constexpr std::uint64_t kTrialsPerChunk = 1024;

/// Runs `per_trial(acc, trial)` for every trial and folds the chunk
/// accumulators with `merge(into, from)`.
template <class Acc, class MakeAcc, class PerTrial, class Merge>
Acc run_trials(const TrialPlan& plan, MakeAcc make_acc, PerTrial per_trial, Merge merge) {
  const std::uint64_t chunks = (plan.trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  std::vector<Acc> partial;
  partial.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    partial.push_back(make_acc());
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) {
        return;
      }
      try {
        const std::uint64_t begin = c * kTrialsPerChunk;
        const std::uint64_t end = std::min(plan.trials, begin + kTrialsPerChunk);
        for (std::uint64_t t = begin; t < end; ++t) {
          per_trial(partial[c], t);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next.store(chunks);
        return;
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(plan.threads), std::max<std::uint64_t>(chunks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  Acc total = make_acc();
  for (auto& acc : partial) {
    merge(total, acc);
  }
  return total;
}

/// Per-trial results stored by trial index.
template <class T, class PerTrial>
std::vector<T> collect_trials(const TrialPlan& plan, PerTrial per_trial) {
  std::vector<T> out(plan.trials);
  struct Nothing {};
  run_trials<Nothing>(
      plan, [] { return Nothing{}; },
      [&](Nothing&, std::uint64_t t) { out[t] = per_trial(t); }, [](Nothing&, Nothing&) {});
  return out;
}

}  // namespace erw
