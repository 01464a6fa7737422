#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "rigclust/model.hpp"

namespace rigclust {

using VertexId = std::uint32_t;

/// Realized bipartite graph: attribute weights x (size m), actor weights
/// y (size n) and, per attribute, the sorted actor indices linked to it.
struct BipartiteSample {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::vector<VertexId>> links;
  std::uint64_t seed = 0;

  std::size_t num_attributes() const noexcept { return x.size(); }
  std::size_t num_actors() const noexcept { return y.size(); }
  std::size_t num_links() const noexcept;
};

/// Actor graph: sorted, deduplicated neighbor lists without self-loops.
class ProjectedGraph {
 public:
  ProjectedGraph() = default;
  explicit ProjectedGraph(std::vector<std::vector<VertexId>> adjacency);

  /// Builds from an undirected edge list; duplicates are merged. Throws
  /// std::invalid_argument on self-loops or ids >= num_vertices.
  static ProjectedGraph from_edges(std::size_t num_vertices,
                                   const std::vector<std::pair<VertexId, VertexId>>& edges);

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept;
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[v]; }
  const std::vector<std::vector<VertexId>>& adjacency() const noexcept { return adjacency_; }
  bool adjacent(VertexId u, VertexId v) const;

 private:
  std::vector<std::vector<VertexId>> adjacency_;
};

enum class Generator {
  /// One uniform per (attribute, actor) pair from a counter-based stream.
  reference,
  /// Geometric skipping over weight buckets with thinning.
  fast,
};

/// p_ij = min(1, x_i y_j / sqrt(n m)).
double link_probability(double x, double y, double sqrt_nm);

/// Draws the weights and then the links; fully determined by (params, seed)
/// and independent of `threads`.
BipartiteSample sample_bipartite(const ModelParams& params, std::uint64_t seed,
                                 Generator generator = Generator::reference, unsigned threads = 1);

/// Links only, for given weights.
BipartiteSample sample_links(std::vector<double> x, std::vector<double> y, std::uint64_t seed,
                             Generator generator = Generator::reference, unsigned threads = 1);

inline constexpr std::uint64_t kDefaultEdgeBudget = std::uint64_t{1} << 28;

/// Actors sharing an attribute become adjacent. Throws BudgetExceeded when
/// the per-attribute cliques would hold more than `edge_budget` pairs.
ProjectedGraph project(const BipartiteSample& sample, std::uint64_t edge_budget = kDefaultEdgeBudget,
                       unsigned threads = 1);

/// `u v` per line, 0-based, u < v.
void write_edge_list(std::ostream& os, const ProjectedGraph& g);

}  // namespace rigclust
