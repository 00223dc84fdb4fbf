// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "erw/erw.hpp"
#include "erw/io/config.hpp"
#include "erw/io/experiment.hpp"
#include "erw/io/table.hpp"

#ifndef ERW_CONFIG_DIR
#define ERW_CONFIG_DIR "configs"
#endif

namespace {

using namespace erw;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_seconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* pattern, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return buffer;
}

std::vector<double> probability_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

Outcome kernel_closure() {
  std::uint64_t checked = 0;
  for (double p : probability_grid()) {
    const WalkParams params(p, 0.5);
    for (std::int64_t n = 1; n <= 1000; ++n) {
      for (std::int64_t x = -n; x <= n; x += 2) {
        const double up = kernel_prob(x, n, 1, params);
        const double down = kernel_prob(x, n, -1, params);
        if (up + down != 1.0 || up < 0.0 || up > 1.0 || down < 0.0 || down > 1.0) {
          return {false, fmt("closure broken at p=%g n=%lld x=%lld", p, (long long)n, (long long)x)};
        }
        ++checked;
      }
    }
  }
  return {true, fmt("%llu states", (unsigned long long)checked)};
}

Outcome generator_of_abs_closed_form() {
  const TestFunction abs_value = [](std::int64_t x) { return static_cast<double>(std::llabs(x)); };
  double worst = 0.0;
  for (double p : probability_grid()) {
    const WalkParams params(p, 0.5);
    for (std::int64_t n = 1; n <= 1000; ++n) {
      for (std::int64_t x = -n; x <= n; x += 2) {
        const double expected = x == 0 ? 1.0 : (2.0 * p - 1.0) * static_cast<double>(std::llabs(x)) / static_cast<double>(n);
        worst = std::max(worst, std::abs(generator_apply(abs_value, x, n, params) - expected));
      }
    }
  }
  return {worst <= 1e-12, fmt("max |error| = %.3g (tol 1e-12)", worst)};
}

Outcome oracle_agreement() {
  Outcome out;
  double worst = 0.0;
  std::uint64_t seed = 100;
  for (double p : {0.25, 0.5, 0.75}) {
    for (double r : {0.3, 0.5}) {
      const WalkParams params(p, r);
      const Pmf exact = exact_distribution(params, 10);
      for (auto mode : {SamplingMode::marginal, SamplingMode::history}) {
        const Pmf empirical = empirical_distribution(params, 10, WalkMode::of(mode), TrialPlan{seed++, 1'000'000, 0});
        const double tv = total_variation(exact, empirical);
        worst = std::max(worst, tv);
        if (tv > 0.01) {
          out.pass = false;
        }
      }
    }
  }
  out.detail = fmt("max TV = %.5f over 12 (p, r, mode) cells (tol 0.01)", worst);
  return out;
}

Outcome mean_recursion() {
  double worst = 0.0;
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (double p : grid) {
    for (double r : grid) {
      const WalkParams params(p, r);
      const auto means = mean_sequence(params, 16);
      for (std::int64_t n = 1; n <= 16; ++n) {
        worst = std::max(worst, std::abs(exact_distribution(params, n).mean() - means[static_cast<std::size_t>(n - 1)]));
      }
    }
  }
  return {worst <= 1e-10, fmt("max |error| = %.3g (tol 1e-10)", worst)};
}

Outcome martingale_identity() {
  double worst = 0.0;
  for (double p : {0.8, 0.9, 1.0}) {
    const auto a = scaling_sequence(p, 10'001);
    for (std::int64_t n = 1; n <= 10'000; ++n) {
      const std::int64_t stride = std::max<std::int64_t>(2, 2 * (n / 16));
      for (std::int64_t x = -n; x <= n; x += stride) {
        const double relative = std::abs(martingale_residual(x, n, a)) / (std::abs(a.at(n) * static_cast<double>(x)) + 1.0);
        worst = std::max(worst, relative);
      }
      const double relative = std::abs(martingale_residual(n, n, a)) / (a.at(n) * static_cast<double>(n) + 1.0);
      worst = std::max(worst, relative);
    }
  }
  const double r = 0.7;
  const auto estimates = transience_mass_estimate(WalkParams(0.9, r), {1000, 10000}, 0.05, TrialPlan{500, 10'000, 0});
  const auto& early = estimates[0].summary;
  const auto& late = estimates[1].summary;
  const double spread = std::abs(late.mean - early.mean);
  const double combined = std::sqrt(early.std_error * early.std_error + late.std_error * late.std_error);
  const bool stable = spread <= 3.0 * combined;
  const bool anchored = std::abs(early.mean - (2 * r - 1)) <= 3.0 * early.std_error &&
                        std::abs(late.mean - (2 * r - 1)) <= 3.0 * late.std_error;
  return {worst <= 1e-10 && stable,
          fmt("max relative residual %.3g (tol 1e-10); E[M] at 1e3 = %.4f +- %.4f, at 1e4 = %.4f +- %.4f, "
              "E[M_1] = %.1f%s",
              worst, early.mean, early.std_error, late.mean, late.std_error, 2 * r - 1,
              anchored ? "" : " (not within 3 stderr of E[M_1])")};
}

Outcome gamma_limit() {
  Outcome out;
  for (double p : {0.8, 0.9}) {
    const auto a = scaling_sequence(p, 1'000'000);
    const double scaled = a.scaled(1'000'000);
    const double target = gamma_fn(2 * p);
    const double relative = std::abs(scaled / target - 1.0);
    out.pass = out.pass && relative <= 0.005;
    out.detail += fmt("p=%.1f: n^{2p-1}a_n = %.7f, Gamma(2p) = %.7f, rel %.2e; ", p, scaled, target, relative);
  }
  return out;
}

Outcome positive_recurrence() {
  Outcome out;
  struct Case {
    double p;
    std::int64_t m;
    std::int64_t x;
  };
  std::uint64_t seed = 700;
  for (const Case c : {Case{0.0, 1, 1}, Case{0.1, 1, 1}, Case{0.1, 3, 1}}) {
    const auto s = hitting_time_trials(c.m, c.x, WalkParams(c.p, 0.5), 1'000'000, TrialPlan{seed++, 100'000, 0});
    const double bound = bound_positive_recurrence(c.p, c.x);
    const bool ok = s.censored_count == 0 && s.count == 100'000 && s.mean <= bound + 3.0 * s.std_error;
    out.pass = out.pass && ok;
    out.detail += fmt("(p=%.1f,m=%lld,x=%lld) mean %.4f +- %.4f vs bound %.3f, censored %llu; ", c.p,
                      (long long)c.m, (long long)c.x, s.mean, s.std_error, bound, (unsigned long long)s.censored_count);
  }
  return out;
}

Outcome phase_boundary() {
  const std::vector<std::int64_t> horizons{100, 1000, 10000};
  const auto diffusive = return_probability_curve(WalkParams(0.5, 0.5), horizons, SamplingMode::marginal,
                                                  TrialPlan{800, 10'000, 0});
  const auto superdiffusive = return_probability_curve(WalkParams(0.9, 0.5), horizons, SamplingMode::marginal,
                                                       TrialPlan{801, 10'000, 0});
  bool pass = diffusive.back().no_return_fraction <= 0.05;
  for (const auto& point : superdiffusive) {
    pass = pass && point.no_return_fraction > 0.2;
  }
  const double decrement = superdiffusive[1].no_return_fraction - superdiffusive[2].no_return_fraction;
  pass = pass && decrement <= 0.05;
  return {pass, fmt("p=0.5: %.4f/%.4f/%.4f; p=0.9: %.4f/%.4f/%.4f (decrement 1e3->1e4 %.4f)",
                    diffusive[0].no_return_fraction, diffusive[1].no_return_fraction, diffusive[2].no_return_fraction,
                    superdiffusive[0].no_return_fraction, superdiffusive[1].no_return_fraction,
                    superdiffusive[2].no_return_fraction, decrement)};
}

Outcome lil_slack() {
  Outcome out;
  std::uint64_t seed = 900;
  for (double p : {0.5, 0.7}) {
    const double threshold = 2.0 / std::sqrt(3.0 - 4.0 * p);
    const auto paths = path_diagnostics_trials(WalkParams(p, 0.5), 1'000'000, SamplingMode::marginal,
                                               TrialPlan{seed++, 100, 0});
    int within = 0;
    double largest = 0.0;
    for (const auto& d : paths) {
      within += d.max_lil_stat.value() <= threshold;
      largest = std::max(largest, d.max_lil_stat.value());
    }
    out.pass = out.pass && within >= 99;
    out.detail += fmt("p=%.1f: %d/100 paths <= %.3f (largest %.3f); ", p, within, threshold, largest);
  }
  return out;
}

Outcome rmf_oracle() {
  Outcome out;
  std::uint64_t seed = 1000;
  for (double p : {0.5, 0.75}) {
    const auto exact = rmf_exact_small(6, p);
    for (auto mode : {SamplingMode::history, SamplingMode::marginal}) {
      const auto empirical = rmf_empirical_small(6, p, mode, TrialPlan{seed++, 1'000'000, 0});
      const double tv = total_variation(exact, empirical);
      out.pass = out.pass && tv <= 0.01;
      out.detail += fmt("p=%.2f %s TV %.5f; ", p, mode == SamplingMode::history ? "history" : "marginal", tv);
    }
  }
  return out;
}

Outcome rmf_bound_check() {
  Outcome out;
  std::uint64_t seed = 1100;
  for (double p : {0.9, 0.1}) {
    const double bound = rmf_bound(p).value;
    for (std::int64_t M : {10, 50, 100}) {
      const auto report = rmf_runs(RmfParams(M, p, 100'000), SamplingMode::marginal, TrialPlan{seed++, 100, 0});
      const auto& s = report.signed_summary;
      out.pass = out.pass && s.mean <= bound + 3.0 * s.std_error;
      out.detail += fmt("p=%.1f M=%lld: %.4f +- %.4f (|.| %.4f); ", p, (long long)M, s.mean, s.std_error,
                        report.abs_summary.mean);
    }
  }
  out.detail += "bound 0.625";
  return out;
}

Outcome determinism() {
  namespace fs = std::filesystem;
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(ERW_CONFIG_DIR)) {
    if (entry.path().extension() == ".json") configs.push_back(entry.path());
  }
  std::sort(configs.begin(), configs.end());
  if (configs.empty()) {
    return {false, "no configs found in " ERW_CONFIG_DIR};
  }
  Outcome out;
  int compared = 0;
  for (const auto& path : configs) {
    std::ifstream file(path);
    std::stringstream text;
    text << file.rdbuf();
    const auto config = io::parse_config(text.str());
    const auto single = io::run_experiment(config, 1);
    const auto many = io::run_experiment(config, 3);
    for (auto format : {io::Format::csv, io::Format::json}) {
      if (io::emit(single, format) != io::emit(many, format)) {
        out.pass = false;
        out.detail += "differs: " + path.filename().string() + "; ";
      }
      ++compared;
    }
  }
  out.detail += fmt("%d outputs compared across --threads 1 vs 3", compared);
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "kernel closure", 1.0, kernel_closure},
      {2, "generator of |x| closed form", 1.0, generator_of_abs_closed_form},
      {3, "samplers vs exact oracle", 60.0, oracle_agreement},
      {4, "mean recursion vs oracle", 1.0, mean_recursion},
      {5, "martingale identity", 60.0, martingale_identity},
      {6, "Gamma(2p) limit of scaling sequence", 5.0, gamma_limit},
      {7, "positive-recurrence bound", 300.0, positive_recurrence},
      {8, "phase-boundary return curves", 300.0, phase_boundary},
      {9, "LIL slack check", 300.0, lil_slack},
      {10, "RMF samplers vs exact oracle", 120.0, rmf_oracle},
      {11, "RMF bound", 600.0, rmf_bound_check},
      {12, "determinism across thread counts", 3600.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.time_limit_seconds;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::printf("[%s] C%-2d %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                outcome.detail.c_str(), seconds, c.time_limit_seconds, in_time ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
