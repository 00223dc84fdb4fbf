#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "erw/error.hpp"
#include "erw/stats.hpp"

namespace erw {
namespace {

// P(X_k != 0 for all 0 < k <= N) by dynamic programming over (x, n) with the
// kernel written out by hand. The walk is Markov in (x, n) under uniform memory.
std::vector<double> survival_by_dp(double p, double r, std::int64_t N) {
  std::vector<double> out;
  std::vector<double> mass(2 * N + 3, 0.0);
  const auto at = [&](std::int64_t x) -> double& { return mass[static_cast<std::size_t>(x + N + 1)]; };
  at(1) = r;
  at(-1) = 1.0 - r;
  out.push_back(1.0);
  for (std::int64_t n = 1; n < N; ++n) {
    std::vector<double> next(mass.size(), 0.0);
    const auto next_at = [&](std::int64_t x) -> double& { return next[static_cast<std::size_t>(x + N + 1)]; };
    for (std::int64_t x = -n; x <= n; ++x) {
      const double w = at(x);
      if (w == 0.0) {
        continue;
      }
      const double up = (x * (2 * p - 1) + n) / (2.0 * n);
      if (x + 1 != 0) next_at(x + 1) += w * up;
      if (x - 1 != 0) next_at(x - 1) += w * (1 - up);
    }
    mass = std::move(next);
    double total = 0.0;
    for (double w : mass) total += w;
    out.push_back(total);
  }
  return out;  // out[N - 1] = survival through N
}

TEST(PositiveRecurrenceBound, Examples) {
  EXPECT_DOUBLE_EQ(bound_positive_recurrence(0.1, 1), 6.0);
  EXPECT_DOUBLE_EQ(bound_positive_recurrence(0.0, 3), 7.0);
  EXPECT_DOUBLE_EQ(bound_positive_recurrence(0.0, 1), 3.0);
  EXPECT_DOUBLE_EQ(bound_positive_recurrence(0.0, -3), 7.0);
  double previous = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-4, 1e-8}) {
    const double value = bound_positive_recurrence(1.0 / 6.0 - eps, 1);
    EXPECT_GT(value, previous);
    previous = value;
  }
  EXPECT_GT(previous, 1e7);
  EXPECT_THROW(bound_positive_recurrence(1.0 / 6.0, 1), DomainError);
  EXPECT_THROW(bound_positive_recurrence(0.2, 1), DomainError);
  EXPECT_THROW(bound_positive_recurrence(0.1, 0), DomainError);
}

TEST(HittingTime, FairWalkFirstStep) {
  constexpr int kTrials = 100000;
  int immediate = 0;
  for (int t = 0; t < kTrials; ++t) {
    auto gen = stream_for(21, static_cast<std::uint64_t>(t));
    const auto sample = hitting_time(1, 1, 0.5, 1000, gen);
    ASSERT_LE(sample.steps, sample.cap);
    immediate += !sample.censored && sample.steps == 1;
  }
  EXPECT_NEAR(immediate / double(kTrials), 0.5, 5 * std::sqrt(0.25 / kTrials));
}

TEST(HittingTime, DeterministicAndCensoredCases) {
  // p = 0 at (m=1, x=1): the kernel reverses surely.
  const auto surely = hitting_time_trials(1, 1, WalkParams(0.0, 0.5), 10, TrialPlan{1, 1000, 1});
  EXPECT_EQ(surely.mean, 1.0);
  EXPECT_EQ(surely.std_error, 0.0);
  EXPECT_EQ(surely.censored_count, 0u);
  // Three steps are needed from x = 3; a cap of 2 censors everything.
  const auto censored = hitting_time_trials(3, 3, WalkParams(0.0, 0.5), 2, TrialPlan{1, 100, 1});
  EXPECT_EQ(censored.count, 0u);
  EXPECT_EQ(censored.censored_count, 100u);
  EXPECT_TRUE(std::isnan(censored.mean));
  // p = 1 from (1, 1) never returns.
  const auto ballistic = hitting_time_trials(1, 1, WalkParams(1.0, 0.5), 50, TrialPlan{1, 10, 1});
  EXPECT_EQ(ballistic.censored_count, 10u);
}

TEST(HittingTime, Preconditions) {
  const WalkParams params(0.1, 0.5);
  const TrialPlan plan{1, 1, 1};
  EXPECT_THROW(hitting_time_trials(0, 1, params, 10, plan), DomainError);
  EXPECT_THROW(hitting_time_trials(2, 0, params, 10, plan), DomainError);
  EXPECT_THROW(hitting_time_trials(2, 1, params, 10, plan), DomainError);
  EXPECT_THROW(hitting_time_trials(1, 3, params, 10, plan), DomainError);
  EXPECT_THROW(hitting_time_trials(1, 1, params, 0, plan), DomainError);
}

TEST(HittingTime, SummaryInvariants) {
  const auto s = hitting_time_trials(3, 1, WalkParams(0.1, 0.5), 1000, TrialPlan{5, 5000, 0});
  EXPECT_LE(s.ci_low, s.mean);
  EXPECT_LE(s.mean, s.ci_high);
  EXPECT_GE(s.std_error, 0.0);
  EXPECT_EQ(s.count + s.censored_count, 5000u);
}

Trajectory path_from(const std::vector<int>& steps) {
  Trajectory path{WalkParams(0.5, 0.5), {}, {}};
  std::int64_t x = 0;
  for (int s : steps) {
    path.steps.push(s);
    x += s;
    path.positions.push_back(x);
  }
  return path;
}

TEST(PathDiagnostics, BallisticPath) {
  auto gen = stream_for(1, 0);
  const auto d = path_diagnostics(sample_trajectory(WalkParams(1.0, 1.0), 1000, WalkMode::marginal(), gen));
  EXPECT_EQ(d.zero_hits, 0);
  EXPECT_EQ(d.sign_changes, 0);
  EXPECT_FALSE(d.last_return.has_value());
  ASSERT_TRUE(d.max_lil_stat.has_value());
  // |X_n| = n, so the ratio n / sqrt(2 n ln ln n) grows with n.
  EXPECT_NEAR(*d.max_lil_stat, 1000.0 / lil_scale(1000), 1e-12);
}

TEST(PathDiagnostics, AlternatingPath) {
  for (int horizon : {7, 10, 33}) {
    std::vector<int> steps;
    for (int k = 0; k < horizon; ++k) steps.push_back(k % 2 ? -1 : 1);
    const auto d = path_diagnostics(path_from(steps));
    EXPECT_EQ(d.zero_hits, horizon / 2);
    EXPECT_EQ(d.last_return.value_or(-1), horizon / 2 * 2);
    EXPECT_EQ(d.sign_changes, 0);
    EXPECT_EQ(d.max_lil_stat.has_value(), horizon >= 16);
  }
}

TEST(PathDiagnostics, SignChangesAndLilValues) {
  // 1, 0, -1, 0, 1, 2, ... : one change from + to -, one back.
  std::vector<int> steps{1, -1, -1, 1, 1, 1};
  for (int k = 0; k < 14; ++k) steps.push_back(1);
  const auto d = path_diagnostics(path_from(steps));
  EXPECT_EQ(d.sign_changes, 2);
  EXPECT_EQ(d.zero_hits, 2);
  EXPECT_EQ(d.last_return.value_or(-1), 4);
  // X_n = n - 4 for n >= 4; the max over [16, 20] is at n = 20.
  double best = 0.0;
  double best_critical = 0.0;
  for (int n = 16; n <= 20; ++n) {
    const double dn = n;
    best = std::max(best, (n - 4) / std::sqrt(2 * dn * std::log(std::log(dn))));
    best_critical = std::max(best_critical, (n - 4) / std::sqrt(2 * dn * std::log(dn) * std::log(std::log(std::log(dn)))));
  }
  EXPECT_NEAR(d.max_lil_stat.value(), best, 1e-12);
  EXPECT_NEAR(d.max_lil_critical.value(), best_critical, 1e-12);
}

TEST(PathDiagnostics, FairWalkExceedanceRate) {
  // P(max over [16, 1e4] of |S_n| / sqrt(2n ln ln n) > 2) for the simple
  // walk, from an absorbing-boundary recursion over the position law.
  constexpr double kExceed = 0.015466667173202003;
  constexpr std::int64_t kPaths = 10'000;
  const auto paths = path_diagnostics_trials(WalkParams(0.5, 0.5), 10'000, SamplingMode::marginal,
                                             TrialPlan{31, kPaths, 0});
  std::int64_t above = 0;
  for (const auto& d : paths) above += d.max_lil_stat.value() > 2.0;
  const double rate = static_cast<double>(above) / kPaths;
  EXPECT_NEAR(rate, kExceed, 5.0 * std::sqrt(kExceed * (1 - kExceed) / kPaths));
}

TEST(ReturnCurve, FullMemoryCopierNeverReturns) {
  const auto curve = return_probability_curve(WalkParams(1.0, 0.5), {10, 100, 1000}, SamplingMode::marginal,
                                              TrialPlan{1, 2000, 0});
  for (const auto& point : curve) {
    EXPECT_EQ(point.no_return_fraction, 1.0);
  }
}

TEST(ReturnCurve, NonincreasingOnSharedPaths) {
  for (double p : {0.2, 0.5, 0.8}) {
    for (auto mode : {SamplingMode::marginal, SamplingMode::history}) {
      const auto curve = return_probability_curve(WalkParams(p, 0.4), {1, 2, 3, 5, 8, 13, 21, 34, 55, 89},
                                                  mode, TrialPlan{7, 3000, 0});
      for (std::size_t i = 1; i < curve.size(); ++i) {
        ASSERT_LE(curve[i].survivors, curve[i - 1].survivors);
      }
    }
  }
}

TEST(ReturnCurve, MatchesDynamicProgrammingOracle) {
  const std::vector<std::int64_t> horizons{2, 4, 8, 16, 24};
  for (double p : {0.3, 0.5, 0.9}) {
    const auto exact = survival_by_dp(p, 0.5, 24);
    const auto curve = return_probability_curve(WalkParams(p, 0.5), horizons, SamplingMode::history,
                                                TrialPlan{8, 100000, 0});
    for (const auto& point : curve) {
      const double q = exact[static_cast<std::size_t>(point.horizon - 1)];
      EXPECT_NEAR(point.no_return_fraction, q, 5 * std::sqrt(q * (1 - q) / 100000) + 1e-12)
          << "p=" << p << " N=" << point.horizon;
    }
  }
  // Fair walk: C(2n, n) / 4^n after 2n steps.
  const auto fair = survival_by_dp(0.5, 0.5, 24);
  EXPECT_NEAR(fair[23], 2704156.0 / std::pow(4.0, 12), 1e-12);
}

TEST(Transience, BallisticMartingaleIsOne) {
  const auto estimate = transience_mass_estimate(WalkParams(1.0, 1.0), 10000, 0.5, TrialPlan{1, 200, 0});
  EXPECT_NEAR(estimate.summary.mean, 1.0, 1e-12);
  EXPECT_NEAR(estimate.summary.std_error, 0.0, 1e-12);
  EXPECT_EQ(estimate.fraction_above_epsilon, 1.0);
}

TEST(Transience, MeanIsHorizonIndependent) {
  const double r = 0.7;
  const auto estimates = transience_mass_estimate(WalkParams(0.9, r), {10, 100, 1000}, 0.1, TrialPlan{9, 20000, 0});
  for (const auto& e : estimates) {
    EXPECT_NEAR(e.summary.mean, 2 * r - 1, 3 * e.summary.std_error) << "horizon " << e.horizon;
  }
  const auto symmetric = transience_mass_estimate(WalkParams(0.9, 0.5), {10, 100, 1000}, 0.1, TrialPlan{10, 20000, 0});
  for (const auto& e : symmetric) {
    EXPECT_NEAR(e.summary.mean, 0.0, 3 * e.summary.std_error);
  }
}

TEST(Transience, Preconditions) {
  EXPECT_THROW(transience_mass_estimate(WalkParams(0.75, 0.5), 100, 0.1, TrialPlan{}), DomainError);
  EXPECT_THROW(transience_mass_estimate(WalkParams(0.9, 0.5), {100, 10}, 0.1, TrialPlan{}), DomainError);
}

}  // namespace
}  // namespace erw
