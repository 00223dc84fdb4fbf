#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace erw {

/// Mean, standard error and 95% normal-approximation interval of a sample.
/// censored_count counts trials that produced no value and are excluded
/// from `count`.
struct TrialSummary {
  std::uint64_t count = 0;
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
  double ci_low = std::numeric_limits<double>::quiet_NaN();
  double ci_high = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t censored_count = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Welford running moments with a pairwise merge (Chan et al.).
class MomentAccumulator {
 public:
  void add(double value) noexcept {
    ++count_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (value - mean_);
  }

  void censor() noexcept { ++censored_; }

  void merge(const MomentAccumulator& other) noexcept {
    censored_ += other.censored_;
    if (other.count_ == 0) {
      return;
    }
    if (count_ == 0) {
      count_ = other.count_;
      mean_ = other.mean_;
      m2_ = other.m2_;
      return;
    }
    const double n_a = static_cast<double>(count_);
    const double n_b = static_cast<double>(other.count_);
    const double n = n_a + n_b;
    const double delta = other.mean_ - mean_;
    mean_ += delta * n_b / n;
    m2_ += other.m2_ + delta * delta * n_a * n_b / n;
    count_ += other.count_;
  }

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t censored() const noexcept { return censored_; }
  double mean() const noexcept { return count_ ? mean_ : std::numeric_limits<double>::quiet_NaN(); }

  /// Unbiased sample variance; 0 for a single observation.
  double variance() const noexcept {
    if (count_ == 0) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }

  TrialSummary summary() const noexcept {
    TrialSummary s;
    s.count = count_;
    s.censored_count = censored_;
    if (count_ == 0) {
      return s;
    }
    s.mean = mean_;
    s.std_error = std::sqrt(variance() / static_cast<double>(count_));
    s.ci_low = mean_ - kZ95 * s.std_error;
    s.ci_high = mean_ + kZ95 * s.std_error;
    return s;
  }

 private:
  std::uint64_t count_ = 0;
  std::uint64_t censored_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace erw
