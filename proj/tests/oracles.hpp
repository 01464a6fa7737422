// Reference computations used only by the tests. Each one is deliberately
// built from a different route than the library code it checks.
#pragma once

#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "rigclust/graphgen.hpp"
#include "rigclust/pmf.hpp"

namespace oracle {

inline double poisson(double mean, std::size_t s) {
  if (mean == 0.0) return s == 0 ? 1.0 : 0.0;
  const double sd = static_cast<double>(s);
  return std::exp(-mean + sd * std::log(mean) - std::lgamma(sd + 1.0));
}

// Panjer recursion for Poisson(mu)-compound sums of `f`.
inline std::vector<double> compound_poisson(double mu, const std::vector<double>& f, std::size_t K) {
  std::vector<double> g(K + 1, 0.0);
  g[0] = std::exp(mu * ((f.empty() ? 0.0 : f[0]) - 1.0));
  for (std::size_t k = 1; k <= K; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k && j < f.size(); ++j) acc += static_cast<double>(j) * f[j] * g[k - j];
    g[k] = mu / static_cast<double>(k) * acc;
  }
  return g;
}

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double eps,
                      int depth = 40) {
  struct Rec {
    const std::function<double(double)>& f;
    double step(double a, double b, double fa, double fm, double fb, double whole, double eps,
                int depth) const {
      const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
      return step(a, m, fa, flm, fm, left, eps / 2, depth - 1) +
             step(m, b, fm, frm, fb, right, eps / 2, depth - 1);
    }
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec{f}.step(a, b, fa, fm, fb, whole, eps, depth);
}

// Upper incomplete gamma for any real a (x > 0), stepping down from the
// interval (0, 1] with Gamma(a, x) = (Gamma(a + 1, x) - x^a e^{-x}) / a.
inline double upper_gamma(double a, double x) {
  if (a > 0.0) return boost::math::tgamma(a, x);
  const double steps = std::ceil(-a);
  double c = a + steps;  // in [0, 1)
  double g = c == 0.0 ? boost::math::expint(1, x) : boost::math::tgamma(c, x);
  for (int i = 0; i < static_cast<int>(steps); ++i) {
    g = (g - std::pow(x, c - 1.0) * std::exp(-x)) / (c - 1.0);
    c -= 1.0;
  }
  return g;
}

// E[e^{-L} L^{s+r}] / s! for L = scale * W, W ~ Pareto(x_min, alpha), in
// closed form: alpha u0^alpha Gamma(s + r - alpha, u0) / s!, u0 = scale x_min.
inline double pareto_mixed_entry(double x_min, double alpha, double scale, int r, std::size_t s) {
  const double u0 = scale * x_min;
  const double sd = static_cast<double>(s);
  return alpha * std::pow(u0, alpha) * upper_gamma(sd + r - alpha, u0) / std::tgamma(sd + 1.0);
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    tv += std::abs(a - b);
  }
  return 0.5 * tv;
}

// Numeric pmf with its tail folded into one extra bin at K+1, to compare
// against a histogram binned the same way.
inline std::vector<double> binned(const rigclust::Pmf& p, std::size_t K) {
  std::vector<double> out(K + 2, 0.0);
  double inside = 0.0;
  for (std::size_t s = 0; s <= K; ++s) {
    out[s] = p[s];
    inside += p[s];
  }
  out[K + 1] = std::max(0.0, 1.0 - inside);
  return out;
}

template <class Draw>
std::vector<double> histogram(Draw&& draw, std::size_t samples, std::size_t K) {
  std::vector<double> h(K + 2, 0.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto v = static_cast<std::size_t>(draw());
    h[std::min(v, K + 1)] += 1.0;
  }
  for (double& x : h) x /= static_cast<double>(samples);
  return h;
}

// Independent Monte Carlo draws of the limit-law variables, using a
// standard engine and its own inverse-CDF Pareto.
class LimitSampler {
 public:
  LimitSampler(double alpha, double gamma, double beta, std::uint64_t seed)
      : alpha_(alpha), gamma_(gamma), rng_(seed) {
    const double a1 = alpha / (alpha - 1.0), b1 = gamma / (gamma - 1.0);
    actor_scale_ = std::sqrt(beta) * a1;
    attr_scale_ = b1 / std::sqrt(beta);
  }
  double pareto(double index) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double v;
    do v = u(rng_);
    while (v == 0.0);
    return std::pow(v, -1.0 / index);
  }
  std::int64_t pois(double rate) { return std::poisson_distribution<std::int64_t>(rate)(rng_); }
  // Lambda_1^(r): Poisson over the r-size-biased attribute rate.
  std::int64_t lambda1(int r) { return pois(attr_scale_ * pareto(alpha_ - r)); }
  std::int64_t lambda0(int r) { return pois(actor_scale_ * pareto(gamma_ - r)); }
  // tau: a size-biased draw of Lambda_1 minus one, which is Lambda_1^(1).
  std::int64_t tau() { return lambda1(1); }
  std::int64_t dstar(int r) {
    const std::int64_t n = lambda0(r);
    std::int64_t sum = 0;
    for (std::int64_t j = 0; j < n; ++j) sum += tau();
    return sum;
  }

 private:
  double alpha_, gamma_;
  std::mt19937_64 rng_;
  double actor_scale_, attr_scale_;
};

// Triangles through each vertex by checking every vertex triple.
inline std::vector<std::uint64_t> brute_triangles(const rigclust::ProjectedGraph& g) {
  const auto n = static_cast<rigclust::VertexId>(g.num_vertices());
  std::vector<std::uint64_t> t(n, 0);
  for (rigclust::VertexId a = 0; a < n; ++a)
    for (rigclust::VertexId b = a + 1; b < n; ++b)
      for (rigclust::VertexId c = b + 1; c < n; ++c)
        if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c)) ++t[a], ++t[b], ++t[c];
  return t;
}

// Ordered triples (v1, v2, v3) of distinct vertices with v2 ~ v1 ~ v3:
// per degree of v1, (count with v2 ~ v3, count overall). The cumulative
// version conditions on d(v1) >= k instead.
struct TripleCounts {
  std::map<std::size_t, std::pair<std::uint64_t, std::uint64_t>> exact;
  std::map<std::size_t, std::pair<std::uint64_t, std::uint64_t>> at_least;
};

inline TripleCounts ordered_triples(const rigclust::ProjectedGraph& g) {
  TripleCounts out;
  const auto n = static_cast<rigclust::VertexId>(g.num_vertices());
  std::size_t max_deg = 0;
  for (rigclust::VertexId v = 0; v < n; ++v) max_deg = std::max(max_deg, g.degree(v));
  for (rigclust::VertexId v1 = 0; v1 < n; ++v1)
    for (rigclust::VertexId v2 = 0; v2 < n; ++v2)
      for (rigclust::VertexId v3 = 0; v3 < n; ++v3) {
        if (v1 == v2 || v1 == v3 || v2 == v3) continue;
        if (!g.adjacent(v1, v2) || !g.adjacent(v1, v3)) continue;
        const std::size_t d = g.degree(v1);
        const bool closed = g.adjacent(v2, v3);
        auto& e = out.exact[d];
        e.first += closed;
        e.second += 1;
        for (std::size_t k = 0; k <= d; ++k) {
          auto& c = out.at_least[k];
          c.first += closed;
          c.second += 1;
        }
      }
  return out;
}

// Adjacency by direct witness search over all attributes.
inline bool has_witness(const rigclust::BipartiteSample& b, rigclust::VertexId u, rigclust::VertexId v) {
  for (const auto& l : b.links) {
    const bool hu = std::find(l.begin(), l.end(), u) != l.end();
    const bool hv = std::find(l.begin(), l.end(), v) != l.end();
    if (hu && hv) return true;
  }
  return false;
}

inline rigclust::ProjectedGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<std::pair<rigclust::VertexId, rigclust::VertexId>> edges;
  std::bernoulli_distribution coin(p);
  for (rigclust::VertexId a = 0; a < n; ++a)
    for (rigclust::VertexId b = a + 1; b < n; ++b)
      if (coin(rng)) edges.emplace_back(a, b);
  return rigclust::ProjectedGraph::from_edges(n, edges);
}

}  // namespace oracle
