#include "rigclust/theory.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "rigclust/error.hpp"
#include "rigclust/format.hpp"
#include "rigclust/mixed_poisson.hpp"

namespace rigclust {

namespace {

const Pareto& require_pareto(const WeightLaw& law, const char* what) {
  if (!law.is_pareto()) throw std::invalid_argument(std::string(what) + " requires a Pareto law");
  return law.pareto();
}

PowerTerm dstar_term(const ModelParams& p, int r) {
  const Pareto& y = require_pareto(p.y_law(), "asymptotic_tail_dstar");
  const double g = y.tail_index;
  const double c_y = p.y_law().tail_constant();
  if (r == 1) {
    return {c_y * g / (g - 1.0) * std::pow(p.a(2), g - 1.0) * std::pow(p.b(1), g - 2.0), 1.0 - g};
  }
  if (r == 2) {
    return {c_y * g / (g - 2.0) * std::pow(p.a(2), g - 2.0) * std::pow(p.b(1), g - 2.0) / p.b(2),
            2.0 - g};
  }
  throw std::invalid_argument("asymptotic_tail_dstar: r must be 1 or 2");
}

PowerTerm lambda_term(const ModelParams& p, int r) {
  const Pareto& x = require_pareto(p.x_law(), "asymptotic_tail_lambda");
  if (r != 2 && r != 3) throw std::invalid_argument("asymptotic_tail_lambda: r must be 2 or 3");
  const double al = x.tail_index;
  const double c_x = p.x_law().tail_constant();
  return {c_x * al / (al - r) * std::pow(p.beta(), (r - al) / 2.0) / p.a(r) *
              std::pow(p.b(1), al - r),
          r - al};
}

// Sum of independent regularly varying tails: the heavier term dominates,
// tied exponents add their constants.
PowerTerm combine(const PowerTerm& u, const PowerTerm& v) {
  if (indices_tie(u.exponent, v.exponent)) return {u.coef + v.coef, u.exponent};
  return u.exponent > v.exponent ? u : v;
}

}  // namespace

LimitLaws limit_laws(const ModelParams& params, const TheoryOptions& opt) {
  if (!params.has_fourth_moments())
    throw InfiniteMomentError("limit laws need E X^4 and E Y^4 finite");
  LimitLaws L;
  const std::size_t K = opt.k_max;
  L.lambda0_1 = pmf_mixed_poisson(lambda_spec(params, Role::actor, 1), K, opt.tol);
  L.lambda0_2 = pmf_mixed_poisson(lambda_spec(params, Role::actor, 2), K, opt.tol);
  L.tau = pmf_tau(params, K, opt.tol);
  L.lambda1_2 = pmf_mixed_poisson(lambda_spec(params, Role::attribute, 2), K, opt.tol);
  L.lambda1_3 = pmf_mixed_poisson(lambda_spec(params, Role::attribute, 3), K, opt.tol);
  L.dstar_1 = pmf_stopped_sum({L.lambda0_1, L.tau}, K, opt.count_tol, opt.threads);
  L.dstar_2 = pmf_stopped_sum({L.lambda0_2, L.tau}, K, opt.count_tol, opt.threads);
  L.triangle_law = convolve(L.dstar_1, L.lambda1_3, K, opt.threads);
  L.cherry_law =
      convolve(convolve(L.dstar_2, L.lambda1_2, K, opt.threads), L.lambda1_2, K, opt.threads);
  L.triangle_prefactor = params.a(3) * std::pow(params.b(1), 3);
  L.cherry_prefactor = params.a(2) * params.a(2) * params.b(1) * params.b(1) * params.b(2);
  return L;
}

ABValues abAB(const LimitLaws& L, int k) {
  if (k < 2) throw std::invalid_argument("abAB: k must be at least 2");
  const auto s = static_cast<std::size_t>(k - 2);
  const TailBounds ta = tail_from_pmf(L.triangle_law, s);
  const TailBounds tb = tail_from_pmf(L.cherry_law, s);
  const double pa = L.triangle_prefactor;
  const double pb = L.cherry_prefactor;
  return {pa * L.triangle_law[s], pb * L.cherry_law[s], {pa * ta.lower, pa * std::min(1.0, ta.upper)},
          {pb * tb.lower, pb * std::min(1.0, tb.upper)}};
}

ABValues abAB(const ModelParams& params, int k, std::size_t k_max, double tol) {
  TheoryOptions opt;
  opt.k_max = k_max;
  opt.tol = tol;
  return abAB(limit_laws(params, opt), k);
}

double predict_c(double beta, double a, double b) {
  if (a == 0.0) {
    if (b > 0.0) return 0.0;
    throw std::domain_error("degree k unreachable in limit law");
  }
  return 1.0 / (1.0 + std::sqrt(beta) * b / a);
}

Interval predict_C(double beta, const Interval& A, const Interval& B) {
  // Decreasing in B, increasing in A.
  const double lo = predict_c(beta, A.lo, B.hi);
  const double hi = predict_c(beta, A.hi, B.lo);
  return {std::min(lo, hi), std::max(lo, hi)};
}

double delta_exponent(double alpha, double gamma) {
  return std::clamp(alpha - gamma - 1.0, -1.0, 1.0);
}

double PowerTerm::operator()(double k) const { return coef * std::pow(k, exponent); }

double asymptotic_tail_dstar(const ModelParams& params, int r, double k) {
  return dstar_term(params, r)(k);
}

double asymptotic_tail_lambda(const ModelParams& params, int r, double k) {
  return lambda_term(params, r)(k);
}

double truncated_moment_tail_lambda(const ModelParams& params, int r, double t) {
  const MixingSpec spec = lambda_spec(params, Role::attribute, r);
  // lambda = scale * X, so E(lambda^r 1{lambda > t}) = scale^r E(X^r 1{X > t/scale}).
  return truncated_moment(spec.weight_law, r, t / spec.scale) / moment(spec.weight_law, r);
}

bool indices_tie(double x, double y) {
  return std::abs(x - y) <= kTieRelTol * std::max({std::abs(x), std::abs(y), 1.0});
}

AsymptoticForm asymptotic_form(const ModelParams& params) {
  const PowerTerm d1 = dstar_term(params, 1);
  const PowerTerm d2 = dstar_term(params, 2);
  const PowerTerm l3 = lambda_term(params, 3);
  const PowerTerm l2 = lambda_term(params, 2);
  const PowerTerm l2_pair{2.0 * l2.coef, l2.exponent};  // Lambda_1^(2) and its copy
  return {combine(d1, l3), combine(d2, l2_pair)};
}

AsymptoticAB asymptotic_AB(const ModelParams& params, double k) {
  const AsymptoticForm f = asymptotic_form(params);
  return {f.A_tilde(k), f.B_tilde(k)};
}

double ratio_constant(const ModelParams& params) {
  const AsymptoticForm f = asymptotic_form(params);
  const double pa = params.a(3) * std::pow(params.b(1), 3);
  const double pb = params.a(2) * params.a(2) * params.b(1) * params.b(1) * params.b(2);
  return pb / pa * f.B_tilde.coef / f.A_tilde.coef;
}

TheoryCurve theory_curve(const ModelParams& params, const LimitLaws& laws, int k_min, int k_max,
                         double crossover_width) {
  if (k_min < 2 || k_max < k_min) throw std::invalid_argument("theory_curve: bad k range");
  TheoryCurve curve;
  const bool can_switch = params.x_law().is_pareto() && params.y_law().is_pareto();
  std::optional<AsymptoticForm> form;
  if (can_switch) form = asymptotic_form(params);
  const double prefactor_ratio = laws.cherry_prefactor / laws.triangle_prefactor;
  for (int k = k_min; k <= k_max; ++k) {
    const ABValues v = abAB(laws, k);
    TheoryRow row{k, v.a, v.b, v.A, v.B, std::nullopt, std::nullopt, false};
    if (v.a > 0.0 || v.b > 0.0) row.c_pred = predict_c(params.beta(), v.a, v.b);
    const bool wide = v.A.width() > crossover_width * v.A.mid() ||
                      v.B.width() > crossover_width * v.B.mid();
    if (can_switch && (curve.crossover_k || wide)) {
      if (!curve.crossover_k) curve.crossover_k = k;
      const double s = static_cast<double>(k - 2);
      const double ratio = prefactor_ratio * form->B_tilde(s) / form->A_tilde(s);
      const double c = 1.0 / (1.0 + std::sqrt(params.beta()) * ratio);
      row.C_pred = Interval{c, c};
      row.asymptotic = true;
    } else if (v.A.hi > 0.0 || v.B.hi > 0.0) {
      row.C_pred = predict_C(params.beta(), v.A, v.B);
    }
    curve.rows.push_back(row);
  }
  return curve;
}

void write_theory_csv(std::ostream& os, const TheoryCurve& curve) {
  os << "k,a,b,A_lo,A_hi,B_lo,B_hi,c_pred,C_pred_lo,C_pred_hi\n";
  for (const TheoryRow& r : curve.rows) {
    os << r.k << ',' << format_double(r.a) << ',' << format_double(r.b) << ','
       << format_double(r.A.lo) << ',' << format_double(r.A.hi) << ',' << format_double(r.B.lo)
       << ',' << format_double(r.B.hi) << ',';
    if (r.c_pred) os << format_double(*r.c_pred);
    os << ',';
    if (r.C_pred) os << format_double(r.C_pred->lo) << ',' << format_double(r.C_pred->hi);
    else os << ',';
    os << '\n';
  }
}

}  // namespace rigclust
