#include "rigclust/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "rigclust/error.hpp"
#include "rigclust/format.hpp"
#include "rigclust/parallel.hpp"

namespace rigclust {

std::vector<std::uint64_t> triangle_counts(const ProjectedGraph& g, unsigned threads) {
  const std::size_t n = g.num_vertices();
  // Orient every edge from lower to higher (degree, id) rank.
  auto before = [&](VertexId u, VertexId v) {
    const std::size_t du = g.degree(u), dv = g.degree(v);
    return du < dv || (du == dv && u < v);
  };
  std::vector<std::vector<VertexId>> out(n);
  for (VertexId v = 0; v < n; ++v)
    for (VertexId u : g.neighbors(v))
      if (before(v, u)) out[v].push_back(u);

  const unsigned workers = std::max<unsigned>(1, std::min<std::size_t>(resolve_threads(threads), n));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(n, 0));
  const std::size_t block = (n + workers - 1) / workers;
  parallel_for(workers, workers, [&](std::size_t w) {
    auto& tri = partial[w];
    const std::size_t lo = w * block, hi = std::min(n, lo + block);
    for (std::size_t v = lo; v < hi; ++v) {
      const auto& ov = out[v];
      for (VertexId u : ov) {
        const auto& ou = out[u];
        auto a = ov.begin();
        auto b = ou.begin();
        while (a != ov.end() && b != ou.end()) {
          if (*a < *b) {
            ++a;
          } else if (*b < *a) {
            ++b;
          } else {
            ++tri[v];
            ++tri[u];
            ++tri[*a];
            ++a;
            ++b;
          }
        }
      }
    }
  });
  std::vector<std::uint64_t> total(n, 0);
  for (const auto& p : partial)
    for (std::size_t v = 0; v < n; ++v) total[v] += p[v];
  return total;
}

std::optional<double> ClusteringSpectrum::c(std::size_t k) const noexcept {
  const std::uint64_t den = cherry_sum(k);
  if (den == 0) return std::nullopt;
  return static_cast<double>(tri_sum(k)) / static_cast<double>(den);
}

std::optional<double> ClusteringSpectrum::C(std::size_t k) const noexcept {
  const std::uint64_t den = cum_cherry(k);
  if (den == 0) return std::nullopt;
  return static_cast<double>(cum_tri(k)) / static_cast<double>(den);
}

std::uint64_t ClusteringSpectrum::total_triangles() const noexcept {
  std::uint64_t s = 0;
  for (std::uint64_t t : tri_) s += t;
  return s / 3;
}

void ClusteringSpectrum::grow(std::size_t k) {
  if (k < vertices_.size()) return;
  vertices_.resize(k + 1, 0);
  tri_.resize(k + 1, 0);
  cherry_.resize(k + 1, 0);
}

void ClusteringSpectrum::rebuild_cumulative() {
  const std::size_t len = vertices_.size();
  cum_tri_.assign(len, 0);
  cum_cherry_.assign(len, 0);
  std::uint64_t t = 0, c = 0;
  for (std::size_t k = len; k-- > 0;) {
    t += tri_[k];
    c += cherry_[k];
    cum_tri_[k] = t;
    cum_cherry_[k] = c;
  }
}

ClusteringSpectrum::ClusteringSpectrum(std::vector<std::uint64_t> vertices,
                                       std::vector<std::uint64_t> tri_sums)
    : vertices_(std::move(vertices)), tri_(std::move(tri_sums)) {
  if (tri_.size() != vertices_.size())
    throw std::invalid_argument("spectrum: per-degree arrays differ in length");
  cherry_.resize(vertices_.size());
  for (std::size_t k = 0; k < vertices_.size(); ++k)
    cherry_[k] = vertices_[k] * (static_cast<std::uint64_t>(k) * (k > 0 ? k - 1 : 0) / 2);
  rebuild_cumulative();
}

void ClusteringSpectrum::merge(const ClusteringSpectrum& other) {
  if (other.vertices_.empty()) return;
  grow(other.max_degree());
  for (std::size_t k = 0; k < other.vertices_.size(); ++k) {
    vertices_[k] += other.vertices_[k];
    tri_[k] += other.tri_[k];
    cherry_[k] += other.cherry_[k];
  }
  rebuild_cumulative();
}

ClusteringSpectrum spectrum(const ProjectedGraph& g, unsigned threads) {
  const std::vector<std::uint64_t> tri = triangle_counts(g, threads);
  if (g.num_vertices() == 0) return {};
  std::size_t dmax = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) dmax = std::max(dmax, g.degree(v));
  std::vector<std::uint64_t> count(dmax + 1, 0), tsum(dmax + 1, 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    ++count[g.degree(v)];
    tsum[g.degree(v)] += tri[v];
  }
  return ClusteringSpectrum(std::move(count), std::move(tsum));
}

ClusteringSpectrum pool(std::span<const ClusteringSpectrum> spectra) {
  if (spectra.empty()) throw std::invalid_argument("pool: no spectra");
  ClusteringSpectrum out;
  for (const auto& s : spectra) out.merge(s);
  return out;
}

ProjectedGraph read_edge_list(std::istream& is) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::string line;
  std::size_t line_no = 0;
  VertexId max_id = 0;
  bool any = false;
  auto fail = [&](const std::string& why) {
    throw DataError("edge list line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const char* p = line.data();
    const char* end = p + line.size();
    auto skip_ws = [&] {
      while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    };
    skip_ws();
    if (p == end) continue;
    VertexId ids[2];
    for (VertexId& id : ids) {
      skip_ws();
      const auto [next, ec] = std::from_chars(p, end, id);
      if (ec != std::errc{} || next == p) fail("expected two nonnegative integer ids");
      p = next;
      if (p != end && *p != ' ' && *p != '\t' && *p != '\r') fail("unexpected character");
    }
    skip_ws();
    if (p != end) fail("more than two fields");
    if (ids[0] == ids[1]) fail("self-loop");
    edges.emplace_back(ids[0], ids[1]);
    max_id = std::max({max_id, ids[0], ids[1]});
    any = true;
  }
  return ProjectedGraph::from_edges(any ? static_cast<std::size_t>(max_id) + 1 : 0, edges);
}

void write_spectrum_csv(std::ostream& os, const ClusteringSpectrum& s) {
  os << "k,n_vertices,tri_sum,cherry_sum,c_k,cum_tri,cum_cherry,C_k\n";
  for (std::size_t k = 2; k <= s.max_degree(); ++k) {
    if (s.cherry_sum(k) == 0) continue;
    os << k << ',' << s.vertices(k) << ',' << s.tri_sum(k) << ',' << s.cherry_sum(k) << ','
       << format_double(*s.c(k)) << ',' << s.cum_tri(k) << ',' << s.cum_cherry(k) << ','
       << format_double(*s.C(k)) << '\n';
  }
}

}  // namespace rigclust
