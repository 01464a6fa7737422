#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rigclust/model.hpp"
#include "rigclust/pmf.hpp"
#include "rigclust/stopped_sum.hpp"

namespace rigclust {

struct Interval {
  double lo;
  double hi;
  double mid() const noexcept { return 0.5 * (lo + hi); }
  double width() const noexcept { return hi - lo; }
};

struct TheoryOptions {
  /// Window {0..k_max} of every limit-law pmf.
  std::size_t k_max = 2048;
  /// Absolute quadrature tolerance per mixed Poisson entry.
  double tol = 1e-12;
  /// In-window mass the stopped-sum count truncation may drop.
  double count_tol = 1e-18;
  unsigned threads = 1;
};

/// The integer laws behind the limit clustering curves.
///   triangle law: d_*^(1) + Lambda_1^(3)
///   cherry law:   d_*^(2) + Lambda_1^(2) + Lambda_2^(2)
/// All components are independent; Lambda_2^(2) is a copy of Lambda_1^(2).
struct LimitLaws {
  Pmf lambda0_1;  // Lambda_0^(1)
  Pmf lambda0_2;  // Lambda_0^(2)
  Pmf tau;
  Pmf dstar_1;  // d_*^(1)
  Pmf dstar_2;  // d_*^(2)
  Pmf lambda1_2;  // Lambda_1^(2)
  Pmf lambda1_3;  // Lambda_1^(3)
  Pmf triangle_law;
  Pmf cherry_law;
  double triangle_prefactor;  // a_3 b_1^3
  double cherry_prefactor;    // a_2^2 b_1^2 b_2
};

/// Builds every pmf in LimitLaws. Requires finite fourth moments.
LimitLaws limit_laws(const ModelParams& params, const TheoryOptions& options = {});

struct ABValues {
  double a;    // a(k)
  double b;    // b(k)
  Interval A;  // A(k)
  Interval B;  // B(k)
};

/// a(k), b(k) as point masses and A(k), B(k) as truncation intervals; k >= 2.
ABValues abAB(const LimitLaws& laws, int k);
ABValues abAB(const ModelParams& params, int k, std::size_t k_max = 2048, double tol = 1e-12);

/// 1 / (1 + sqrt(beta) b / a). a = 0 < b gives 0; a = b = 0 throws.
double predict_c(double beta, double a, double b);
/// Same map applied to A(k), B(k); the interval is ordered lo <= hi.
Interval predict_C(double beta, const Interval& A, const Interval& B);

/// clamp(alpha - gamma - 1, -1, 1).
double delta_exponent(double alpha, double gamma);

/// Leading-order P(d_*^(r) >= k), r in {1, 2}. Needs a Pareto actor law.
double asymptotic_tail_dstar(const ModelParams& params, int r, double k);
/// Leading-order P(Lambda_1^(r) >= k), r in {2, 3}. Needs a Pareto attribute law.
double asymptotic_tail_lambda(const ModelParams& params, int r, double k);

/// Tail of P(Lambda_1^(r) > t) via the truncated rate moment
/// E(lambda^r 1{lambda > t}) / E lambda^r.
double truncated_moment_tail_lambda(const ModelParams& params, int r, double t);

/// A power term coef * k^exponent.
struct PowerTerm {
  double coef;
  double exponent;
  double operator()(double k) const;
};

/// Dominant power terms of A~(k) = P(triangle law >= k) and
/// B~(k) = P(cherry law >= k). Terms with tied exponents are summed.
struct AsymptoticForm {
  PowerTerm A_tilde;
  PowerTerm B_tilde;
};
AsymptoticForm asymptotic_form(const ModelParams& params);

struct AsymptoticAB {
  double A_tilde;
  double B_tilde;
};
AsymptoticAB asymptotic_AB(const ModelParams& params, double k);

/// Constant c in B(k)/A(k) ~ c k^delta, built from the moment prefactors and
/// the dominant asymptotic terms.
double ratio_constant(const ModelParams& params);

/// Relative tolerance used to detect alpha == gamma and alpha == gamma + 2.
inline constexpr double kTieRelTol = 1e-9;
bool indices_tie(double x, double y);

struct TheoryRow {
  int k;
  double a;
  double b;
  Interval A;
  Interval B;
  std::optional<double> c_pred;
  std::optional<Interval> C_pred;
  bool asymptotic = false;  // C_pred from the asymptotic form
};

struct TheoryCurve {
  std::vector<TheoryRow> rows;
  /// First k whose C_pred came from the asymptotic form.
  std::optional<int> crossover_k;
};

/// Rows for k in [k_min, k_max]. Once the relative width of the A or B
/// interval exceeds `crossover_width`, C_pred switches to the asymptotic
/// form (power-law models only) for that and every larger k.
TheoryCurve theory_curve(const ModelParams& params, const LimitLaws& laws, int k_min, int k_max,
                         double crossover_width = 0.1);

/// CSV: k,a,b,A_lo,A_hi,B_lo,B_hi,c_pred,C_pred_lo,C_pred_hi
void write_theory_csv(std::ostream& os, const TheoryCurve& curve);

}  // namespace rigclust
