#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace rigclust {

/// Truncated probability mass function on {0, ..., k_max()}.
/// `tail_mass` is an upper bound on P(value > k_max()); it is never dropped.
struct Pmf {
  std::vector<double> mass;
  double tail_mass = 0.0;

  std::size_t size() const noexcept { return mass.size(); }
  std::size_t k_max() const noexcept { return mass.empty() ? 0 : mass.size() - 1; }
  double operator[](std::size_t s) const noexcept { return s < mass.size() ? mass[s] : 0.0; }

  /// Sum of the explicit entries.
  double total() const noexcept;
  /// Mean over the explicit entries (a lower bound on the true mean).
  double mean_lower() const noexcept;
};

/// Point mass at `at`, stored on {0, ..., max(at, k_max)}.
Pmf point_mass(std::size_t at, std::size_t k_max = 0);

/// Closed-form Poisson(mean) on {0, ..., k_max}; the tail is exact.
Pmf poisson_pmf(double mean, std::size_t k_max);

/// Restricts to {0, ..., k_max}, moving the cut mass into tail_mass.
Pmf truncated(const Pmf& p, std::size_t k_max);

/// Throws std::invalid_argument if an entry is negative or
/// |total + tail_mass - 1| exceeds `slack`.
void check_normalized(const Pmf& p, double slack = 1e-9);

/// CSV `s,mass` rows followed by a `tail_mass,<value>` record.
void write_pmf_csv(std::ostream& os, const Pmf& p);
Pmf read_pmf_csv(std::istream& is);

}  // namespace rigclust
