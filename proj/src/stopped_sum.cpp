#include "rigclust/stopped_sum.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rigclust/parallel.hpp"

namespace rigclust {

namespace {

// sum_i a[i] * b[i] with four fixed partial sums; the order is independent
// of how callers split work across threads.
double dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

// out[s] = sum_a p[a] q[s-a] for s <= k_max. `q_rev` holds q reversed and
// zero-padded to length k_max + 1 so each output is one contiguous dot.
class Convolver {
 public:
  Convolver(const std::vector<double>& q, std::size_t k_max) : k_max_(k_max), q_rev_(k_max + 1, 0.0) {
    for (std::size_t b = 0; b <= k_max && b < q.size(); ++b) q_rev_[k_max - b] = q[b];
  }

  void apply(const std::vector<double>& p, std::vector<double>& out, unsigned threads) const {
    out.assign(k_max_ + 1, 0.0);
    const std::size_t np = std::min(p.size(), k_max_ + 1);
    parallel_for(k_max_ + 1, threads, [&](std::size_t s) {
      const std::size_t len = std::min(s + 1, np);
      // q[s - a] == q_rev[k_max - s + a]
      out[s] = dot(p.data(), q_rev_.data() + (k_max_ - s), len);
    });
  }

 private:
  std::size_t k_max_;
  std::vector<double> q_rev_;
};

// suffix[j] = sum_{b=j}^{k_max} q[b]; suffix[k_max + 1] = 0.
std::vector<double> suffix_sums(const std::vector<double>& q, std::size_t k_max) {
  std::vector<double> suffix(k_max + 2, 0.0);
  for (std::size_t j = k_max + 1; j-- > 0;) suffix[j] = suffix[j + 1] + (j < q.size() ? q[j] : 0.0);
  return suffix;
}

// Explicit mass of p * q that lands beyond k_max.
double pushed_beyond(const std::vector<double>& p, const std::vector<double>& q_suffix,
                     std::size_t k_max) {
  double pushed = 0.0;
  const std::size_t np = std::min(p.size(), k_max + 1);
  for (std::size_t a = 1; a < np; ++a) pushed += p[a] * q_suffix[k_max - a + 1];
  return pushed;
}

}  // namespace

Pmf convolve(const Pmf& p_in, const Pmf& q_in, std::size_t k_max, unsigned threads) {
  const Pmf p = truncated(p_in, k_max);
  const Pmf q = truncated(q_in, k_max);
  Pmf out;
  Convolver(q.mass, k_max).apply(p.mass, out.mass, threads);
  out.tail_mass = p.tail_mass + q.tail_mass + pushed_beyond(p.mass, suffix_sums(q.mass, k_max), k_max);
  return out;
}

Pmf pmf_stopped_sum(const StoppedSumSpec& spec, std::size_t k_max, double tol, unsigned threads) {
  if (!(tol > 0.0)) throw std::invalid_argument("pmf_stopped_sum: tol must be positive");
  const Pmf& count = spec.count_pmf;
  if (count.mass.empty()) throw std::invalid_argument("pmf_stopped_sum: empty count pmf");
  const Pmf tau = truncated(spec.summand_pmf, k_max);
  const Convolver step(tau.mass, k_max);
  const std::vector<double> tau_suffix = suffix_sums(tau.mass, k_max);

  // remaining[i] = P(N > i)
  std::vector<double> remaining(count.mass.size());
  double acc_tail = count.tail_mass;
  for (std::size_t i = count.mass.size(); i-- > 0;) {
    remaining[i] = acc_tail;
    acc_tail += count.mass[i];
  }

  Pmf out;
  out.mass.assign(k_max + 1, 0.0);
  out.tail_mass = 0.0;

  std::vector<double> power(k_max + 1, 0.0);  // tau^{*i} on the window
  power[0] = 1.0;
  double power_tail = 0.0;  // upper bound on P(S_i > k_max)
  std::vector<double> next;

  for (std::size_t i = 0;; ++i) {
    const double p_i = count.mass[i];
    if (p_i != 0.0) {
      for (std::size_t s = 0; s <= k_max; ++s) out.mass[s] += p_i * power[s];
      out.tail_mass += p_i * power_tail;
    }
    const double rest = remaining[i];
    if (rest == 0.0) break;
    if (i + 1 >= count.mass.size()) {
      out.tail_mass += rest;
      break;
    }
    // P(S_{i+1} > K) = P(S_i > K) + P(S_i <= K, S_i + tau > K)
    double in_window = 0.0;
    for (double v : power) in_window += v;
    power_tail += pushed_beyond(power, tau_suffix, k_max) + in_window * tau.tail_mass;
    step.apply(power, next, threads);
    power.swap(next);
    double next_window = 0.0;
    for (double v : power) next_window += v;
    if (rest * next_window < tol) {
      out.tail_mass += rest;
      break;
    }
  }
  return out;
}

TailBounds tail_from_pmf(const Pmf& p, std::size_t k) {
  double lower = 0.0;
  for (std::size_t s = p.mass.size(); s-- > k;) lower += p.mass[s];
  return {lower, lower + p.tail_mass};
}

}  // namespace rigclust
