#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rigclust/config.hpp"
#include "rigclust/spectrum.hpp"
#include "rigclust/theory.hpp"

namespace rigclust {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "rigclust.report/1";

struct FitResult {
  double slope;
  double intercept;
  double r2;
  std::size_t points;
};

/// Ordinary least squares of log(value) on log(k) over k in [k_lo, k_hi].
/// Needs at least three points; throws DataError on a nonpositive value.
FitResult fit_delta(std::span<const std::pair<double, double>> points, double k_lo, double k_hi);

struct SimulationResult {
  /// One entry per replicate; empty when the replicate hit the edge budget.
  std::vector<std::optional<ClusteringSpectrum>> replicates;
  ClusteringSpectrum pooled;
  int succeeded = 0;
  int failed = 0;
};

/// Seed of replicate `index`; a pure function of (master seed, index).
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t index);

/// Generates, projects and measures every replicate. Throws BudgetExceeded
/// if all replicates fail.
SimulationResult simulate(const ExperimentConfig& config);

/// Replicate-level standard error of a pooled ratio sum(num) / sum(den),
/// by the delta method. Absent with fewer than two contributing replicates.
std::optional<double> ratio_standard_error(std::span<const std::uint64_t> num,
                                           std::span<const std::uint64_t> den);

struct ReportRow {
  int k;
  std::uint64_t n_vertices;
  std::uint64_t tri_sum;
  std::uint64_t cherry_sum;
  std::uint64_t cum_tri;
  std::uint64_t cum_cherry;
  std::optional<double> c_hat, c_se, C_hat, C_se;
  std::optional<double> c_pred;
  std::optional<Interval> C_pred;
  bool C_pred_asymptotic = false;
  std::optional<double> c_gap, C_gap;
};

struct ComparisonReport {
  std::string config_canonical;
  std::string config_hash;
  int replicates_requested = 0;
  int replicates_succeeded = 0;
  int replicates_failed = 0;
  std::vector<ReportRow> rows;
  std::optional<FitResult> delta_fit;
  std::optional<std::pair<int, int>> fit_window;
  std::optional<FitResult> delta_fit_theory;  // same window, predicted B/A
  std::optional<double> delta_theory;
  std::optional<int> crossover_k;
  std::optional<double> max_c_gap, max_C_gap;
  double simulate_seconds = 0.0;
  double theory_seconds = 0.0;
};

/// Simulation, theory and their comparison for one config. Deterministic in
/// the config (timings aside).
ComparisonReport run(const ExperimentConfig& config);

/// report.csv and report.json (deterministic), timing.json (not).
void write_report(const ComparisonReport& report, const std::filesystem::path& dir);

}  // namespace rigclust
