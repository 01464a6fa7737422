#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rigclust/error.hpp"
#include "rigclust/spectrum.hpp"

using namespace rigclust;

namespace {

ProjectedGraph complete(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return ProjectedGraph::from_edges(n, e);
}

}  // namespace

TEST_CASE("small graphs") {
  CHECK(triangle_counts(complete(3)) == std::vector<std::uint64_t>{1, 1, 1});
  const auto path = ProjectedGraph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(triangle_counts(path) == std::vector<std::uint64_t>{0, 0, 0});

  const ClusteringSpectrum k4 = spectrum(complete(4));
  CHECK(k4.tri_sum(3) == 12);
  CHECK(k4.cherry_sum(3) == 12);
  CHECK(k4.c(3) == 1.0);
  CHECK(k4.C(2) == 1.0);
  CHECK(k4.total_triangles() == 4);

  const auto star = ProjectedGraph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  const ClusteringSpectrum s = spectrum(star);
  CHECK(s.c(5) == 0.0);
  CHECK_FALSE(s.c(1));
  CHECK(s.vertices(1) == 5);
}

TEST_CASE("triangle counts match brute force") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 30; ++t) {
    const ProjectedGraph g = oracle::random_graph(25, 0.1 + 0.02 * t, rng);
    const auto want = oracle::brute_triangles(g);
    CHECK(triangle_counts(g, 1) == want);
    CHECK(triangle_counts(g, 3) == want);
  }
}

TEST_CASE("spectrum invariants") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const ProjectedGraph g = oracle::random_graph(40, 0.05 + 0.01 * t, rng);
    const ClusteringSpectrum s = spectrum(g);
    std::uint64_t tri = 0, cherries = 0, direct_cherries = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const std::uint64_t d = g.degree(v);
      direct_cherries += d * (d - (d > 0)) / 2;
    }
    for (std::size_t k = 0; k <= s.max_degree(); ++k) {
      CHECK(s.tri_sum(k) <= s.cherry_sum(k));
      CHECK(s.cherry_sum(k) == s.vertices(k) * k * (k - (k > 0)) / 2);
      if (auto c = s.c(k)) {
        CHECK(*c >= 0.0);
        CHECK(*c <= 1.0);
      }
      tri += s.tri_sum(k);
      cherries += s.cherry_sum(k);
    }
    CHECK(tri == 3 * s.total_triangles());
    CHECK(cherries == direct_cherries);
    if (cherries) {
      CHECK(*s.C(2) == static_cast<double>(tri) / static_cast<double>(cherries));
    }
  }
}

TEST_CASE("ordered-triple identity") {
  std::mt19937_64 rng(30);
  for (int t = 0; t < 10; ++t) {
    const ProjectedGraph g = oracle::random_graph(30, 0.15 + 0.03 * t, rng);
    const ClusteringSpectrum s = spectrum(g);
    const auto o = oracle::ordered_triples(g);
    for (const auto& [k, c] : o.exact) {
      REQUIRE(s.c(k));
      CHECK(*s.c(k) == static_cast<double>(c.first) / static_cast<double>(c.second));
    }
    for (std::size_t k = 2; k <= s.max_degree(); ++k) {
      if (!o.at_least.count(k)) continue;
      const auto& c = o.at_least.at(k);
      CHECK(*s.C(k) == static_cast<double>(c.first) / static_cast<double>(c.second));
    }
  }
}

TEST_CASE("pooling") {
  std::mt19937_64 rng(2);
  const ClusteringSpectrum a = spectrum(oracle::random_graph(30, 0.3, rng));
  const ClusteringSpectrum b = spectrum(oracle::random_graph(35, 0.2, rng));
  CHECK(pool(std::vector{a}) == a);
  const ClusteringSpectrum zero = spectrum(ProjectedGraph::from_edges(5, {}));
  const ClusteringSpectrum az = pool(std::vector{a, zero});
  for (std::size_t k = 2; k <= a.max_degree(); ++k) CHECK(az.c(k) == a.c(k));
  const ClusteringSpectrum ab = pool(std::vector{a, b});
  for (std::size_t k = 0; k <= std::max(a.max_degree(), b.max_degree()); ++k) {
    CHECK(ab.tri_sum(k) == a.tri_sum(k) + b.tri_sum(k));
    CHECK(ab.cum_cherry(k) == a.cum_cherry(k) + b.cum_cherry(k));
  }
  CHECK(pool(std::vector{a, b}) == pool(std::vector{b, a}));
}

TEST_CASE("edge list input") {
  std::istringstream k4("# K4\n0 1\n0 2\n0 3\n\n1 2\n1 3\n2 3\n");
  const ClusteringSpectrum s = spectrum(read_edge_list(k4));
  CHECK(s.c(3) == 1.0);
  std::ostringstream os;
  write_spectrum_csv(os, s);
  CHECK(os.str() == "k,n_vertices,tri_sum,cherry_sum,c_k,cum_tri,cum_cherry,C_k\n3,4,12,12,1,12,12,1\n");

  std::istringstream empty("");
  CHECK(read_edge_list(empty).num_edges() == 0);

  std::istringstream bad("0 1\n1 x\n");
  try {
    read_edge_list(bad);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream loop("0 1\n2 2\n");
  CHECK_THROWS_AS(read_edge_list(loop), DataError);
}
