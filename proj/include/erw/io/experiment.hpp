#pragma once

// Dispatch from a validated config to the module operation that owns it.
// Everything numeric in a ResultTable comes from that operation.

#include <cstdint>
#include <string>

#include "erw/analysis.hpp"
#include "erw/io/config.hpp"
#include "erw/io/table.hpp"
#include "erw/oracle.hpp"
#include "erw/parallel.hpp"
#include "erw/rmf.hpp"
#include "erw/stats.hpp"
#include "erw/walk.hpp"

namespace erw::io {

inline constexpr const char* kCodeVersion = "0.1.0";

namespace detail {

inline std::vector<Cell> summary_cells(const TrialSummary& s) {
  return {s.count, s.mean, s.std_error, s.ci_low, s.ci_high, s.censored_count};
}

inline Cell optional_cell(const std::optional<std::int64_t>& v) { return v ? Cell(*v) : Cell(); }
inline Cell optional_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

}  // namespace detail

inline ResultTable run_experiment(const ExperimentConfig& config, unsigned threads = 0) {
  validate_preconditions(config);
  ResultTable table;
  table.config = config_entries(config);
  table.metadata.emplace_back("experiment", std::string(experiment_name(config.experiment)));
  table.metadata.emplace_back("code_version", std::string(kCodeVersion));
  table.metadata.emplace_back("master_seed", config.master_seed);

  const TrialPlan plan{config.master_seed, static_cast<std::uint64_t>(config.trials.value_or(1)), threads};
  const auto walk_params = [&] { return WalkParams(*config.p, config.r.value_or(0.5)); };

  switch (config.experiment) {
    case Experiment::simulate: {
      const auto n = *config.horizon;
      const auto counts = terminal_counts(walk_params(), n, WalkMode::of(config.mode_or_default()), plan);
      table.columns = {"position", "count", "frequency"};
      for (std::size_t i = 0; i < counts.size(); ++i) {
        table.add_row({Pmf::position_of(n, i), counts[i],
                       static_cast<double>(counts[i]) / static_cast<double>(plan.trials)});
      }
      break;
    }
    case Experiment::exact: {
      const Pmf pmf = exact_distribution(walk_params(), *config.horizon);
      table.columns = {"position", "probability"};
      for (std::size_t i = 0; i < pmf.size(); ++i) {
        table.add_row({pmf.position(i), pmf.masses()[i]});
      }
      break;
    }
    case Experiment::moments: {
      const auto N = *config.horizon;
      const auto means = mean_sequence(walk_params(), N);
      table.columns = {"n", "mean", "a_n", "scaled_a_n"};
      std::optional<ScalingSequence> a;
      if (*config.p > 0.0) {
        a.emplace(*config.p, N);
      }
      for (std::int64_t n = 1; n <= N; ++n) {
        table.add_row({n, means[static_cast<std::size_t>(n - 1)], a ? Cell(a->at(n)) : Cell(),
                       a ? Cell(a->scaled(n)) : Cell()});
      }
      break;
    }
    case Experiment::hitting: {
      const TrialSummary s = hitting_time_trials(*config.m, *config.x, walk_params(), *config.cap, plan);
      table.columns = {"count", "mean", "std_error", "ci_low", "ci_high", "censored_count"};
      auto row = detail::summary_cells(s);
      if (config.compare_bound.value_or(false)) {
        table.columns.push_back("bound");
        row.emplace_back(bound_positive_recurrence(*config.p, *config.x));
      }
      table.add_row(std::move(row));
      break;
    }
    case Experiment::curve: {
      const auto curve = return_probability_curve(walk_params(), *config.horizons, config.mode_or_default(), plan);
      table.columns = {"horizon", "trials", "survivors", "no_return_fraction"};
      for (const auto& point : curve) {
        table.add_row({point.horizon, point.trials, point.survivors, point.no_return_fraction});
      }
      break;
    }
    case Experiment::transience: {
      const auto estimates = transience_mass_estimate(walk_params(), *config.horizons, *config.epsilon, plan);
      table.columns = {"horizon", "count", "mean", "std_error", "ci_low", "ci_high", "censored_count",
                       "epsilon", "fraction_above_epsilon"};
      for (const auto& e : estimates) {
        std::vector<Cell> row{e.horizon};
        for (auto& cell : detail::summary_cells(e.summary)) {
          row.push_back(std::move(cell));
        }
        row.emplace_back(e.epsilon);
        row.emplace_back(e.fraction_above_epsilon);
        table.add_row(std::move(row));
      }
      break;
    }
    case Experiment::lil: {
      const auto diagnostics = path_diagnostics_trials(walk_params(), *config.horizon, config.mode_or_default(), plan);
      table.columns = {"trial", "horizon", "zero_hits", "last_return", "sign_changes", "max_lil_stat",
                       "max_lil_critical"};
      for (std::size_t t = 0; t < diagnostics.size(); ++t) {
        const auto& d = diagnostics[t];
        table.add_row({static_cast<std::uint64_t>(t), d.horizon, d.zero_hits, detail::optional_cell(d.last_return),
                       d.sign_changes, detail::optional_cell(d.max_lil_stat),
                       detail::optional_cell(d.max_lil_critical)});
      }
      break;
    }
    case Experiment::rmf: {
      const RmfParams params(*config.M, *config.p, *config.total_steps);
      const RmfRunsReport report = rmf_runs(params, config.mode_or_default(), plan);
      table.columns = {"run", "mean_ratio", "mean_abs_ratio"};
      for (std::size_t t = 0; t < report.mean_ratio.size(); ++t) {
        table.add_row({static_cast<std::uint64_t>(t), report.mean_ratio[t], report.mean_abs_ratio[t]});
      }
      table.metadata.emplace_back("mean_ratio", report.signed_summary.mean);
      table.metadata.emplace_back("mean_ratio_std_error", report.signed_summary.std_error);
      table.metadata.emplace_back("mean_abs_ratio", report.abs_summary.mean);
      table.metadata.emplace_back("mean_abs_ratio_std_error", report.abs_summary.std_error);
      table.metadata.emplace_back("replica_correlation", report.replica_correlation);
      if (params.p < 0.25 || params.p >= 0.75) {
        table.metadata.emplace_back("bound", rmf_bound(params.p).value);
      }
      break;
    }
  }
  return table;
}

}  // namespace erw::io
