#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rigclust/graphgen.hpp"

namespace rigclust {

/// Number of triangles through each vertex.
std::vector<std::uint64_t> triangle_counts(const ProjectedGraph& g, unsigned threads = 1);

/// Degree-resolved triangle and cherry sums of one graph (or of several,
/// after pooling). Index k is the degree.
class ClusteringSpectrum {
 public:
  ClusteringSpectrum() = default;
  /// From per-degree vertex counts and per-degree triangle sums.
  ClusteringSpectrum(std::vector<std::uint64_t> vertices, std::vector<std::uint64_t> tri_sums);

  std::size_t max_degree() const noexcept { return vertices_.empty() ? 0 : vertices_.size() - 1; }

  std::uint64_t vertices(std::size_t k) const noexcept { return at(vertices_, k); }
  std::uint64_t tri_sum(std::size_t k) const noexcept { return at(tri_, k); }
  std::uint64_t cherry_sum(std::size_t k) const noexcept { return at(cherry_, k); }
  /// Sums over vertices of degree >= k.
  std::uint64_t cum_tri(std::size_t k) const noexcept { return at(cum_tri_, k); }
  std::uint64_t cum_cherry(std::size_t k) const noexcept { return at(cum_cherry_, k); }

  /// tri_sum / cherry_sum; absent when no vertex of degree k has a cherry.
  std::optional<double> c(std::size_t k) const noexcept;
  /// cum_tri / cum_cherry; absent when the denominator is zero.
  std::optional<double> C(std::size_t k) const noexcept;

  std::uint64_t total_triangles() const noexcept;

  /// Adds every per-degree sum of `other`.
  void merge(const ClusteringSpectrum& other);

  bool operator==(const ClusteringSpectrum&) const = default;

 private:
  static std::uint64_t at(const std::vector<std::uint64_t>& v, std::size_t k) noexcept {
    return k < v.size() ? v[k] : 0;
  }
  void grow(std::size_t k);
  void rebuild_cumulative();

  std::vector<std::uint64_t> vertices_;
  std::vector<std::uint64_t> tri_;
  std::vector<std::uint64_t> cherry_;
  std::vector<std::uint64_t> cum_tri_;
  std::vector<std::uint64_t> cum_cherry_;
};

ClusteringSpectrum spectrum(const ProjectedGraph& g, unsigned threads = 1);

/// Ratio of pooled sums across replicates.
ClusteringSpectrum pool(std::span<const ClusteringSpectrum> spectra);

/// Whitespace edge list, `#` comments and blank lines ignored. Vertex count
/// is one more than the largest id seen. Throws DataError naming the line.
ProjectedGraph read_edge_list(std::istream& is);

/// CSV: k,n_vertices,tri_sum,cherry_sum,c_k,cum_tri,cum_cherry,C_k. One row
/// per degree with a nonzero cherry count.
void write_spectrum_csv(std::ostream& os, const ClusteringSpectrum& s);

}  // namespace rigclust
