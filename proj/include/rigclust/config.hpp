#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rigclust/graphgen.hpp"
#include "rigclust/model.hpp"
#include "rigclust/weights.hpp"

namespace rigclust {

/// Parses `pareto(x_min, alpha)`, `degenerate(v)` or
/// `finite([(v1, p1), (v2, p2), ...])`. Whitespace is free. Throws DataError.
WeightLaw parse_weight_law(std::string_view text);

/// One experiment. Text form is flat `key = value` lines; `#` starts a
/// comment. Every key below may appear at most once per file.
struct ExperimentConfig {
  std::int64_t n = 1000;
  std::int64_t m = 1000;
  std::optional<double> beta;  // defaults to m / n
  WeightLaw x_law = Pareto{1.0, 6.0};
  WeightLaw y_law = Pareto{1.0, 6.0};
  int replicates = 1;
  std::uint64_t seed = 1;
  int k_min = 2;
  int k_max = 30;
  std::size_t pmf_k_max = 2048;
  double tol = 1e-12;
  double count_tol = 1e-18;
  double crossover = 0.1;
  std::optional<int> fit_k_lo;
  std::optional<int> fit_k_hi;
  Generator generator = Generator::fast;
  std::uint64_t edge_budget = kDefaultEdgeBudget;
  bool save_replicates = false;
  std::string output_dir = "out";
  unsigned threads = 0;  // 0: hardware concurrency; never affects results

  ModelParams params() const;
  /// Throws DataError when an invariant fails.
  void validate() const;
  /// Sorted `key = value` lines of every setting that can change results
  /// (output_dir and threads are left out).
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;
};

/// Every recognised key, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one key from its text value. Throws DataError on unknown keys or
/// malformed values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

}  // namespace rigclust
