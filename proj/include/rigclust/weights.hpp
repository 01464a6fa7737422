#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rigclust/rng.hpp"

namespace rigclust {

/// Pareto law: P(Z > t) = (x_min / t)^tail_index for t >= x_min.
struct Pareto {
  double x_min;
  double tail_index;
};

/// Point mass at `value`.
struct Degenerate {
  double value;
};

struct Atom {
  double value;
  double prob;
};

/// Finitely supported law. Probabilities must sum to one within 1e-12.
struct Finite {
  std::vector<Atom> atoms;
};

/// Nonnegative weight distribution used for attribute (X) and actor (Y)
/// weights. Immutable once constructed; validated on construction.
class WeightLaw {
 public:
  using Variant = std::variant<Pareto, Degenerate, Finite>;

  WeightLaw(Pareto p);
  WeightLaw(Degenerate d);
  WeightLaw(Finite f);

  const Variant& variant() const noexcept { return law_; }
  bool is_pareto() const noexcept { return std::holds_alternative<Pareto>(law_); }
  const Pareto& pareto() const { return std::get<Pareto>(law_); }

  /// Pareto tail index, +inf for bounded laws.
  double tail_index() const noexcept;

  /// Constant c in P(Z > t) ~ c t^{-tail_index}; x_min^alpha for Pareto,
  /// zero for bounded laws.
  double tail_constant() const noexcept;

  /// Whether E Z^r is finite.
  bool has_moment(double r) const noexcept { return r < tail_index(); }

  /// Canonical text form, e.g. "pareto(1, 6)".
  std::string to_string() const;

 private:
  Variant law_;
};

/// E Z^r. Throws InfiniteMomentError when r >= tail_index.
double moment(const WeightLaw& law, int r);

/// P(Z > t), exact.
double tail(const WeightLaw& law, double t);

/// E(Z^r 1{Z > t}). Throws InfiniteMomentError when r >= tail_index.
double truncated_moment(const WeightLaw& law, int r, double t);

/// The r-size-biased law, with distribution z^r dF(z) / E Z^r.
WeightLaw size_biased(const WeightLaw& law, int r);

/// One draw from the law. Pareto uses the inverse CDF x_min * u^{-1/alpha}.
template <class URBG>
double sample(const WeightLaw& law, URBG& rng) {
  struct Visitor {
    URBG& rng;
    double operator()(const Pareto& p) const {
      double u;
      do {
        u = to_unit(rng());
      } while (u == 0.0);
      return p.x_min * std::pow(u, -1.0 / p.tail_index);
    }
    double operator()(const Degenerate& d) const { return d.value; }
    double operator()(const Finite& f) const {
      const double u = to_unit(rng());
      double acc = 0.0;
      for (const Atom& a : f.atoms) {
        acc += a.prob;
        if (u < acc) return a.value;
      }
      return f.atoms.back().value;
    }
  };
  return std::visit(Visitor{rng}, law.variant());
}

}  // namespace rigclust
