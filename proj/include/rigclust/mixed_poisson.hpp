#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "rigclust/model.hpp"
#include "rigclust/pmf.hpp"
#include "rigclust/weights.hpp"

namespace rigclust {

/// Random Poisson rate lambda = scale * W, W ~ weight_law, together with the
/// size-bias order r of the mixed Poisson variable built on it. For r > 0
/// the variable has P(s) = E[e^{-lambda} lambda^{s+r}] / (s! E lambda^r).
struct MixingSpec {
  WeightLaw weight_law;
  double scale;
  int bias_order = 0;
};

/// Which side of the bipartite graph the rate belongs to.
/// actor:     lambda_0 = Y * sqrt(beta) * a_1
/// attribute: lambda_k = X * b_1 / sqrt(beta)
enum class Role { actor, attribute };

MixingSpec lambda_spec(const ModelParams& params, Role role, int r);

/// E lambda^r for the (unbiased) rate of `spec`.
double rate_moment(const MixingSpec& spec, int r);

inline constexpr std::size_t kDefaultPmfKMax = 4096;
inline constexpr std::size_t kPmfHardCap = std::size_t{1} << 20;
/// Auto-extension stops once the neglected tail drops below this.
inline constexpr double kTargetTailMass = 1e-8;

/// Numeric pmf of the mixed Poisson variable described by `spec`.
/// Each entry is evaluated by adaptive Gauss-Kronrod quadrature over the
/// mixing law (closed sums for bounded laws) to absolute error below `tol`;
/// QuadratureError otherwise. With `extend`, k_max is doubled until the
/// tail falls below kTargetTailMass or kPmfHardCap is reached.
Pmf pmf_mixed_poisson(const MixingSpec& spec, std::size_t k_max = kDefaultPmfKMax,
                      double tol = 1e-12, bool extend = true);

/// Unnormalized entry E[e^{-lambda} lambda^{s+r}] / s!, by quadrature.
double mixed_poisson_moment_entry(const MixingSpec& spec, std::size_t s, double tol = 1e-12);

/// P(value > k) for the mixed Poisson variable of `spec`.
double mixed_poisson_tail(const MixingSpec& spec, std::size_t k);

/// Law of tau: P(tau = s) = (s + 1) P(Lambda_1 = s + 1) / E Lambda_1.
Pmf pmf_tau(const ModelParams& params, std::size_t k_max = kDefaultPmfKMax, double tol = 1e-12,
            bool extend = true);

/// Exact sampler for the mixed Poisson variable of `spec`: draws the rate
/// from the r-size-biased weight law, then a Poisson count.
class MixedPoissonSampler {
 public:
  explicit MixedPoissonSampler(const MixingSpec& spec);

  template <class URBG>
  std::int64_t operator()(URBG& rng) const {
    const double rate = scale_ * sample(biased_, rng);
    if (rate <= 0.0) return 0;
    std::poisson_distribution<std::int64_t> pois(rate);
    return pois(rng);
  }

 private:
  WeightLaw biased_;
  double scale_;
};

template <class URBG>
std::int64_t sample_biased(const MixingSpec& spec, URBG& rng) {
  return MixedPoissonSampler(spec)(rng);
}

}  // namespace rigclust
