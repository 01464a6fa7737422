#pragma once

#include <cstddef>

#include "rigclust/pmf.hpp"

namespace rigclust {

/// Law of sum_{j=1}^{N} tau_j with N ~ count_pmf independent of the i.i.d.
/// tau_j ~ summand_pmf.
struct StoppedSumSpec {
  Pmf count_pmf;
  Pmf summand_pmf;
};

/// Truncated convolution on {0, ..., k_max}. The result's tail_mass is
/// tail_p + tail_q + (explicit mass pushed beyond k_max).
Pmf convolve(const Pmf& p, const Pmf& q, std::size_t k_max, unsigned threads = 1);

/// Pmf of the randomly stopped sum by accumulating convolution powers of
/// the summand law. The count sum stops at the first i for which the count
/// mass still to come, times the mass tau^{*(i+1)} keeps inside the window,
/// is below `tol`; everything beyond is charged to tail_mass.
Pmf pmf_stopped_sum(const StoppedSumSpec& spec, std::size_t k_max, double tol = 1e-10,
                    unsigned threads = 1);

/// Bounds on P(value >= k).
struct TailBounds {
  double lower;
  double upper;
  double midpoint() const noexcept { return 0.5 * (lower + upper); }
  double width() const noexcept { return upper - lower; }
};

/// lower = sum_{s >= k} mass[s], upper = lower + tail_mass.
TailBounds tail_from_pmf(const Pmf& p, std::size_t k);

}  // namespace rigclust
