#include "rigclust/mixed_poisson.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>

#include "rigclust/error.hpp"

namespace rigclust {

namespace {

constexpr double kQuadRelTol = 1e-13;
constexpr unsigned kQuadMaxDepth = 18;

void check_spec(const MixingSpec& spec) {
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale))
    throw std::invalid_argument("mixing spec: scale must be positive");
  if (spec.bias_order < 0) throw std::invalid_argument("mixing spec: negative bias order");
  if (!spec.weight_law.has_moment(spec.bias_order)) {
    std::ostringstream os;
    os << "mixing spec: bias order " << spec.bias_order << " needs a moment that is infinite for "
       << spec.weight_law.to_string();
    throw InfiniteMomentError(os.str());
  }
  if (spec.bias_order > 0 && !(moment(spec.weight_law, spec.bias_order) > 0.0))
    throw InfiniteMomentError("mixing spec: size-biasing a law with zero moment");
}

double log_poisson(double rate, double s) {
  if (rate == 0.0) return s == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -rate + s * std::log(rate) - std::lgamma(s + 1.0);
}

struct QuadResult {
  double value;
  double error;
};

// E[e^{-lambda} lambda^{s+r}] / (s! E lambda^r) for a Pareto rate, by
// adaptive Gauss-Kronrod on panels placed around the integrand's mode.
// Rate density: alpha u0^alpha u^{-alpha-1} on [u0, inf), u0 = scale*x_min.
QuadResult pareto_entry(const Pareto& law, double scale, int r, std::size_t s_index) {
  const double alpha = law.tail_index;
  const double u0 = scale * law.x_min;
  const double s = static_cast<double>(s_index);
  const double log_h = r == 0 ? 0.0
                              : std::log(alpha) + r * std::log(u0) - std::log(alpha - r);
  const double expo = s + r - alpha - 1.0;
  const double log_const = std::log(alpha) + alpha * std::log(u0) - log_h - std::lgamma(s + 1.0);
  auto log_f = [&](double u) { return log_const + expo * std::log(u) - u; };

  const double mode = std::max(u0, expo);
  const double sigma = std::sqrt(std::max(expo, 1.0));
  const double lo = std::max(u0, mode - 50.0 * sigma);
  const double hi = mode + 50.0 * sigma + 50.0;
  const double log_peak = log_f(mode);

  std::vector<double> cuts{lo};
  for (double k : {-15.0, -6.0, -2.0, 0.0, 2.0, 6.0, 15.0}) {
    const double c = mode + k * sigma;
    if (c > cuts.back() && c < hi) cuts.push_back(c);
  }
  cuts.push_back(hi);

  auto scaled = [&](double u) { return std::exp(log_f(u) - log_peak); };
  double total = 0.0;
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        scaled, cuts[i], cuts[i + 1], kQuadMaxDepth, kQuadRelTol, &err);
    total += v;
    err_total += err;
  }
  const double peak = std::exp(log_peak);
  return {total * peak, err_total * peak};
}

QuadResult entry(const MixingSpec& spec, std::size_t s) {
  const int r = spec.bias_order;
  return std::visit(
      [&](const auto& v) -> QuadResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          return pareto_entry(v, spec.scale, r, s);
        } else if constexpr (std::is_same_v<T, Degenerate>) {
          // The E lambda^r normalizer cancels against lambda^r.
          return {std::exp(log_poisson(spec.scale * v.value, static_cast<double>(s))), 0.0};
        } else {
          const double norm = r == 0 ? 1.0 : rate_moment(spec, r);
          double acc = 0.0;
          for (const Atom& a : v.atoms) {
            const double rate = spec.scale * a.value;
            if (a.prob == 0.0 || (rate == 0.0 && r > 0)) continue;
            const double w = r == 0 ? a.prob : a.prob * std::pow(rate, r) / norm;
            acc += w * std::exp(log_poisson(rate, static_cast<double>(s)));
          }
          return {acc, 0.0};
        }
      },
      spec.weight_law.variant());
}

double poisson_upper(double rate, std::size_t k) {
  // P(Poisson(rate) > k)
  if (rate == 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(k) + 1.0, rate);
}

}  // namespace

MixingSpec lambda_spec(const ModelParams& params, Role role, int r) {
  MixingSpec spec = role == Role::actor
                        ? MixingSpec{params.y_law(), std::sqrt(params.beta()) * params.a(1), r}
                        : MixingSpec{params.x_law(), params.b(1) / std::sqrt(params.beta()), r};
  check_spec(spec);
  return spec;
}

double rate_moment(const MixingSpec& spec, int r) {
  return std::pow(spec.scale, r) * moment(spec.weight_law, r);
}

double mixed_poisson_moment_entry(const MixingSpec& spec, std::size_t s, double tol) {
  check_spec(spec);
  const QuadResult q = entry(spec, s);
  if (q.error >= tol) throw QuadratureError("mixed Poisson entry " + std::to_string(s), q.error);
  const double norm = spec.bias_order == 0 ? 1.0 : rate_moment(spec, spec.bias_order);
  return q.value * norm;
}

double mixed_poisson_tail(const MixingSpec& spec, std::size_t k) {
  check_spec(spec);
  const int r = spec.bias_order;
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          // Rate law after size-biasing is Pareto(u0, alpha - r). Swapping the
          // order of integration in E P(Poisson(lambda) > k) gives
          //   P(k+1, u0) + u0^a' Gamma(k+1-a', u0) / k!,  a' = alpha - r.
          const double ab = v.tail_index - r;
          const double u0 = spec.scale * v.x_min;
          const double a = static_cast<double>(k) + 1.0 - ab;
          if (a <= 0.0) {
            double head = 0.0;
            for (std::size_t s = 0; s <= k; ++s) head += entry(spec, s).value;
            return std::max(0.0, 1.0 - head);
          }
          const double body = boost::math::gamma_p(static_cast<double>(k) + 1.0, u0);
          const double log_rest = ab * std::log(u0) + std::log(boost::math::gamma_q(a, u0)) +
                                  std::lgamma(a) - std::lgamma(static_cast<double>(k) + 1.0);
          return body + std::exp(log_rest);
        } else if constexpr (std::is_same_v<T, Degenerate>) {
          return poisson_upper(spec.scale * v.value, k);
        } else {
          const double norm = r == 0 ? 1.0 : rate_moment(spec, r);
          double acc = 0.0;
          for (const Atom& at : v.atoms) {
            const double rate = spec.scale * at.value;
            const double w = r == 0 ? at.prob : at.prob * std::pow(rate, r) / norm;
            acc += w * poisson_upper(rate, k);
          }
          return acc;
        }
      },
      spec.weight_law.variant());
}

Pmf pmf_mixed_poisson(const MixingSpec& spec, std::size_t k_max, double tol, bool extend) {
  check_spec(spec);
  if (!(tol > 0.0)) throw std::invalid_argument("pmf_mixed_poisson: tol must be positive");
  k_max = std::min(k_max, kPmfHardCap);
  Pmf p;
  for (;;) {
    const std::size_t from = p.mass.size();
    p.mass.resize(k_max + 1);
    for (std::size_t s = from; s <= k_max; ++s) {
      const QuadResult q = entry(spec, s);
      if (q.error >= tol)
        throw QuadratureError("mixed Poisson pmf entry " + std::to_string(s), q.error);
      p.mass[s] = q.value;
    }
    // Slight inflation keeps the closed-form tail an upper bound under rounding.
    p.tail_mass = mixed_poisson_tail(spec, k_max) * (1.0 + 1e-12);
    if (!extend || p.tail_mass < kTargetTailMass || k_max >= kPmfHardCap) break;
    k_max = std::min(2 * k_max, kPmfHardCap);
  }
  return p;
}

Pmf pmf_tau(const ModelParams& params, std::size_t k_max, double tol, bool extend) {
  const MixingSpec lambda1 = lambda_spec(params, Role::attribute, 0);
  const double mean = rate_moment(lambda1, 1);
  if (!(mean > 0.0)) throw std::invalid_argument("pmf_tau: E Lambda_1 is zero");
  // tau has the law of Lambda_1^(1); its tail is computed on that form.
  MixingSpec biased = lambda1;
  biased.bias_order = 1;
  Pmf tau;
  for (;;) {
    const Pmf base = pmf_mixed_poisson(lambda1, k_max + 1, tol, false);
    tau.mass.resize(k_max + 1);
    for (std::size_t s = 0; s <= k_max; ++s)
      tau.mass[s] = static_cast<double>(s + 1) * base.mass[s + 1] / mean;
    tau.tail_mass = mixed_poisson_tail(biased, k_max) * (1.0 + 1e-12);
    if (!extend || tau.tail_mass < kTargetTailMass || k_max >= kPmfHardCap) break;
    k_max = std::min(2 * k_max, kPmfHardCap);
  }
  return tau;
}

MixedPoissonSampler::MixedPoissonSampler(const MixingSpec& spec)
    : biased_((check_spec(spec), size_biased(spec.weight_law, spec.bias_order))),
      scale_(spec.scale) {}

}  // namespace rigclust
