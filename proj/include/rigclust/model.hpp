#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "rigclust/weights.hpp"

namespace rigclust {

/// A model instance: n actors, m attributes, limiting ratio beta = lim m/n,
/// attribute weights X ~ x_law and actor weights Y ~ y_law.
/// Raw moments a_r = E X^r and b_r = E Y^r (r <= 4) are cached; an absent
/// entry means the moment is infinite.
class ModelParams {
 public:
  ModelParams(std::int64_t n, std::int64_t m, double beta, WeightLaw x_law, WeightLaw y_law);

  /// beta defaults to m / n.
  static ModelParams with_ratio(std::int64_t n, std::int64_t m, WeightLaw x_law, WeightLaw y_law);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t m() const noexcept { return m_; }
  double beta() const noexcept { return beta_; }
  const WeightLaw& x_law() const noexcept { return x_law_; }
  const WeightLaw& y_law() const noexcept { return y_law_; }

  /// a_r = E X^r; throws InfiniteMomentError if infinite.
  double a(int r) const;
  /// b_r = E Y^r; throws InfiniteMomentError if infinite.
  double b(int r) const;

  /// Both fourth moments finite, as the limit formulas require.
  bool has_fourth_moments() const noexcept { return a_[4].has_value() && b_[4].has_value(); }

  /// Both laws Pareto with tail indices above 5.
  bool power_law_regime() const noexcept;

 private:
  std::int64_t n_;
  std::int64_t m_;
  double beta_;
  WeightLaw x_law_;
  WeightLaw y_law_;
  std::array<std::optional<double>, 5> a_{};
  std::array<std::optional<double>, 5> b_{};
};

}  // namespace rigclust
