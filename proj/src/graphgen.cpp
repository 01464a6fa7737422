#include "rigclust/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rigclust/error.hpp"
#include "rigclust/parallel.hpp"
#include "rigclust/rng.hpp"

namespace rigclust {

namespace {

// Stream families under a sample seed.
enum : std::uint64_t { kAttributeWeights = 1, kActorWeights = 2, kReferenceLinks = 3, kFastLinks = 4 };

std::uint64_t family(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  return derive_seed(derive_seed(seed, tag), index);
}

struct Bucket {
  std::size_t begin;  // positions in the weight-sorted order
  std::size_t end;
  double y_max;
};

// Actors sorted by decreasing weight, cut into runs whose weights stay
// within a factor of two of the run's maximum.
std::vector<Bucket> make_buckets(const std::vector<double>& y, const std::vector<VertexId>& order) {
  std::vector<Bucket> buckets;
  std::size_t i = 0;
  while (i < order.size()) {
    const double top = y[order[i]];
    std::size_t j = i + 1;
    while (j < order.size() && (top == 0.0 ? y[order[j]] == 0.0 : y[order[j]] >= 0.5 * top)) ++j;
    buckets.push_back({i, j, top});
    i = j;
  }
  return buckets;
}

void reference_links(BipartiteSample& s, unsigned threads) {
  const double sqrt_nm = std::sqrt(static_cast<double>(s.x.size()) * static_cast<double>(s.y.size()));
  parallel_for(s.x.size(), threads, [&](std::size_t i) {
    const Stream stream(family(s.seed, kReferenceLinks, i));
    auto& out = s.links[i];
    const double xi = s.x[i];
    if (xi == 0.0) return;
    for (std::size_t j = 0; j < s.y.size(); ++j) {
      const double p = link_probability(xi, s.y[j], sqrt_nm);
      if (to_unit(stream.at(j)) < p) out.push_back(static_cast<VertexId>(j));
    }
  });
}

void fast_links(BipartiteSample& s, unsigned threads) {
  const double sqrt_nm = std::sqrt(static_cast<double>(s.x.size()) * static_cast<double>(s.y.size()));
  std::vector<VertexId> order(s.y.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return s.y[a] > s.y[b]; });
  const std::vector<Bucket> buckets = make_buckets(s.y, order);

  parallel_for(s.x.size(), threads, [&](std::size_t i) {
    Stream stream(family(s.seed, kFastLinks, i));
    auto& out = s.links[i];
    const double xi = s.x[i];
    if (xi == 0.0) return;
    for (const Bucket& b : buckets) {
      const double p_max = link_probability(xi, b.y_max, sqrt_nm);
      if (p_max <= 0.0) break;  // later buckets are lighter still
      const double log_miss = std::log1p(-p_max);
      std::size_t pos = b.begin;
      for (;;) {
        if (p_max < 1.0) {
          // Number of rejected positions before the next candidate.
          const double skip = std::floor(std::log(stream.open_unit()) / log_miss);
          if (skip >= static_cast<double>(b.end - pos)) break;
          pos += static_cast<std::size_t>(skip);
        }
        if (pos >= b.end) break;
        const VertexId j = order[pos];
        const double p = link_probability(xi, s.y[j], sqrt_nm);
        if (p >= p_max || to_unit(stream()) * p_max < p) out.push_back(j);
        ++pos;
      }
    }
    std::sort(out.begin(), out.end());
  });
}

}  // namespace

std::size_t BipartiteSample::num_links() const noexcept {
  std::size_t total = 0;
  for (const auto& l : links) total += l.size();
  return total;
}

ProjectedGraph::ProjectedGraph(std::vector<std::vector<VertexId>> adjacency)
    : adjacency_(std::move(adjacency)) {}

ProjectedGraph ProjectedGraph::from_edges(std::size_t num_vertices,
                                          const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::vector<std::vector<VertexId>> adj(num_vertices);
  for (const auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (u >= num_vertices || v >= num_vertices) throw std::invalid_argument("vertex id out of range");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& l : adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return ProjectedGraph(std::move(adj));
}

std::size_t ProjectedGraph::num_edges() const noexcept {
  std::size_t total = 0;
  for (const auto& l : adjacency_) total += l.size();
  return total / 2;
}

bool ProjectedGraph::adjacent(VertexId u, VertexId v) const {
  const auto& l = adjacency_[u];
  return std::binary_search(l.begin(), l.end(), v);
}

double link_probability(double x, double y, double sqrt_nm) {
  return std::min(1.0, x * y / sqrt_nm);
}

BipartiteSample sample_links(std::vector<double> x, std::vector<double> y, std::uint64_t seed,
                             Generator generator, unsigned threads) {
  if (y.size() > std::numeric_limits<VertexId>::max())
    throw std::invalid_argument("too many actors for 32-bit ids");
  BipartiteSample s;
  s.x = std::move(x);
  s.y = std::move(y);
  s.seed = seed;
  s.links.assign(s.x.size(), {});
  if (generator == Generator::reference) reference_links(s, threads);
  else fast_links(s, threads);
  return s;
}

BipartiteSample sample_bipartite(const ModelParams& params, std::uint64_t seed, Generator generator,
                                 unsigned threads) {
  std::vector<double> x(static_cast<std::size_t>(params.m()));
  std::vector<double> y(static_cast<std::size_t>(params.n()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    Stream st(family(seed, kAttributeWeights, i));
    x[i] = sample(params.x_law(), st);
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    Stream st(family(seed, kActorWeights, j));
    y[j] = sample(params.y_law(), st);
  }
  return sample_links(std::move(x), std::move(y), seed, generator, threads);
}

ProjectedGraph project(const BipartiteSample& sample, std::uint64_t edge_budget, unsigned threads) {
  std::uint64_t pairs = 0;
  for (const auto& l : sample.links) {
    const std::uint64_t k = l.size();
    pairs += k * (k - (k > 0 ? 1 : 0)) / 2;
    if (pairs > edge_budget)
      throw BudgetExceeded("projection needs more than " + std::to_string(edge_budget) +
                           " clique pairs");
  }
  std::vector<std::vector<VertexId>> adj(sample.num_actors());
  for (const auto& l : sample.links) {
    for (VertexId u : l)
      for (VertexId v : l)
        if (u != v) adj[u].push_back(v);
  }
  parallel_for(adj.size(), threads, [&](std::size_t v) {
    auto& l = adj[v];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  });
  return ProjectedGraph(std::move(adj));
}

void write_edge_list(std::ostream& os, const ProjectedGraph& g) {
  for (VertexId u = 0; u < g.num_vertices(); ++u)
    for (VertexId v : g.neighbors(u))
      if (u < v) os << u << ' ' << v << '\n';
}

}  // namespace rigclust
