#include "rigclust/weights.hpp"

#include <cmath>
#include <sstream>

#include "rigclust/error.hpp"

namespace rigclust {

namespace {

void validate(const Pareto& p) {
  if (!(p.x_min > 0.0) || !std::isfinite(p.x_min))
    throw std::invalid_argument("pareto: x_min must be positive");
  if (!(p.tail_index > 0.0) || !std::isfinite(p.tail_index))
    throw std::invalid_argument("pareto: tail index must be positive");
}

void validate(const Degenerate& d) {
  if (!(d.value >= 0.0) || !std::isfinite(d.value))
    throw std::invalid_argument("degenerate: value must be nonnegative");
}

void validate(const Finite& f) {
  if (f.atoms.empty()) throw std::invalid_argument("finite: no atoms");
  double total = 0.0;
  for (const Atom& a : f.atoms) {
    if (!(a.value >= 0.0) || !std::isfinite(a.value))
      throw std::invalid_argument("finite: atom values must be nonnegative");
    if (!(a.prob >= 0.0)) throw std::invalid_argument("finite: negative probability");
    total += a.prob;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("finite: probabilities must sum to 1");
}

[[noreturn]] void infinite_moment(const Pareto& p, int r) {
  std::ostringstream os;
  os << "moment of order " << r << " is infinite for pareto tail index " << p.tail_index;
  throw InfiniteMomentError(os.str());
}

double pareto_moment(const Pareto& p, int r) {
  if (r == 0) return 1.0;
  if (static_cast<double>(r) >= p.tail_index) infinite_moment(p, r);
  const double gap = p.tail_index - r;
  if (gap < 0.1)
    return std::exp(std::log(p.tail_index) + r * std::log(p.x_min) - std::log(gap));
  return p.tail_index * std::pow(p.x_min, r) / gap;
}

}  // namespace

WeightLaw::WeightLaw(Pareto p) : law_(p) { validate(p); }
WeightLaw::WeightLaw(Degenerate d) : law_(d) { validate(d); }
WeightLaw::WeightLaw(Finite f) : law_(std::move(f)) { validate(std::get<Finite>(law_)); }

double WeightLaw::tail_index() const noexcept {
  if (const auto* p = std::get_if<Pareto>(&law_)) return p->tail_index;
  return std::numeric_limits<double>::infinity();
}

double WeightLaw::tail_constant() const noexcept {
  if (const auto* p = std::get_if<Pareto>(&law_)) return std::pow(p->x_min, p->tail_index);
  return 0.0;
}

std::string WeightLaw::to_string() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* p = std::get_if<Pareto>(&law_)) {
    os << "pareto(" << p->x_min << ", " << p->tail_index << ")";
  } else if (const auto* d = std::get_if<Degenerate>(&law_)) {
    os << "degenerate(" << d->value << ")";
  } else {
    const auto& f = std::get<Finite>(law_);
    os << "finite([";
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
      if (i) os << ", ";
      os << "(" << f.atoms[i].value << ", " << f.atoms[i].prob << ")";
    }
    os << "])";
  }
  return os.str();
}

double moment(const WeightLaw& law, int r) {
  if (r < 0) throw std::invalid_argument("moment: negative order");
  if (r == 0) return 1.0;
  return std::visit(
      [r](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          return pareto_moment(v, r);
        } else if constexpr (std::is_same_v<T, Degenerate>) {
          return std::pow(v.value, r);
        } else {
          double s = 0.0;
          for (const Atom& a : v.atoms) s += a.prob * std::pow(a.value, r);
          return s;
        }
      },
      law.variant());
}

double tail(const WeightLaw& law, double t) {
  return std::visit(
      [t](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (t < v.x_min) return 1.0;
          return std::pow(v.x_min / t, v.tail_index);
        } else if constexpr (std::is_same_v<T, Degenerate>) {
          return v.value > t ? 1.0 : 0.0;
        } else {
          double s = 0.0;
          for (const Atom& a : v.atoms)
            if (a.value > t) s += a.prob;
          return s;
        }
      },
      law.variant());
}

double truncated_moment(const WeightLaw& law, int r, double t) {
  if (r < 0) throw std::invalid_argument("truncated_moment: negative order");
  return std::visit(
      [r, t](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (static_cast<double>(r) >= v.tail_index) infinite_moment(v, r);
          if (t < v.x_min) return pareto_moment(v, r);
          // alpha/(alpha-r) * x_min^alpha * t^(r-alpha)
          const double gap = v.tail_index - r;
          return v.tail_index / gap * std::pow(v.x_min, v.tail_index) * std::pow(t, -gap);
        } else if constexpr (std::is_same_v<T, Degenerate>) {
          return v.value > t ? std::pow(v.value, r) : 0.0;
        } else {
          double s = 0.0;
          for (const Atom& a : v.atoms)
            if (a.value > t) s += a.prob * std::pow(a.value, r);
          return s;
        }
      },
      law.variant());
}

WeightLaw size_biased(const WeightLaw& law, int r) {
  if (r == 0) return law;
  return std::visit(
      [&](const auto& v) -> WeightLaw {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (static_cast<double>(r) >= v.tail_index) infinite_moment(v, r);
          return Pareto{v.x_min, v.tail_index - r};
        } else if constexpr (std::is_same_v<T, Degenerate>) {
          return v;
        } else {
          const double norm = moment(law, r);
          if (!(norm > 0.0))
            throw InfiniteMomentError("size_biased: law has zero moment of the requested order");
          Finite out;
          double total = 0.0;
          for (const Atom& a : v.atoms) {
            const double w = a.prob * std::pow(a.value, r) / norm;
            if (w > 0.0) {
              out.atoms.push_back({a.value, w});
              total += w;
            }
          }
          for (Atom& a : out.atoms) a.prob /= total;
          return out;
        }
      },
      law.variant());
}

}  // namespace rigclust
