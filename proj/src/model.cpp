#include "rigclust/model.hpp"

#include <string>

#include "rigclust/error.hpp"

namespace rigclust {

namespace {

std::optional<double> maybe_moment(const WeightLaw& law, int r) {
  if (!law.has_moment(r)) return std::nullopt;
  return moment(law, r);
}

}  // namespace

ModelParams::ModelParams(std::int64_t n, std::int64_t m, double beta, WeightLaw x_law,
                         WeightLaw y_law)
    : n_(n), m_(m), beta_(beta), x_law_(std::move(x_law)), y_law_(std::move(y_law)) {
  if (n < 1 || m < 1) throw std::invalid_argument("model: n and m must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("model: beta must be positive");
  for (int r = 0; r <= 4; ++r) {
    a_[r] = maybe_moment(x_law_, r);
    b_[r] = maybe_moment(y_law_, r);
  }
}

ModelParams ModelParams::with_ratio(std::int64_t n, std::int64_t m, WeightLaw x_law,
                                    WeightLaw y_law) {
  return ModelParams(n, m, static_cast<double>(m) / static_cast<double>(n), std::move(x_law),
                     std::move(y_law));
}

double ModelParams::a(int r) const {
  if (r >= 0 && r <= 4) {
    if (!a_[r]) throw InfiniteMomentError("a_" + std::to_string(r) + " = E X^r is infinite");
    return *a_[r];
  }
  return moment(x_law_, r);
}

double ModelParams::b(int r) const {
  if (r >= 0 && r <= 4) {
    if (!b_[r]) throw InfiniteMomentError("b_" + std::to_string(r) + " = E Y^r is infinite");
    return *b_[r];
  }
  return moment(y_law_, r);
}

bool ModelParams::power_law_regime() const noexcept {
  return x_law_.is_pareto() && y_law_.is_pareto() && x_law_.tail_index() > 5.0 &&
         y_law_.tail_index() > 5.0;
}

}  // namespace rigclust
