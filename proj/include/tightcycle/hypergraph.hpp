#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tightcycle/vertex_set.hpp"

namespace tightcycle {

using Edge = std::vector<Vertex>;

// A sorted set of at most 8 vertices, each below 2^16, packed into 128 bits.
struct SetKey {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const SetKey&, const SetKey&) = default;
};

struct SetKeyHash {
  std::size_t operator()(const SetKey& key) const noexcept {
    std::uint64_t h = key.lo * 0x9E3779B97F4A7C15ULL;
    h ^= key.hi + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// `sorted` must be strictly increasing.
SetKey pack_sorted(std::span<const Vertex> sorted);

inline constexpr std::size_t kMaxUniformity = 8;
inline constexpr std::size_t kMaxVertices = 65535;

// k-uniform hypergraph on {0..n-1}. Immutable after construction; edges are kept in
// canonical form (each edge sorted, edge list sorted lexicographically).
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(int k, std::size_t n);
  // Throws InputError on a wrong-size edge, repeated vertex, out-of-range vertex or
  // duplicate edge.
  Hypergraph(int k, std::size_t n, std::vector<Edge> edges);

  int k() const { return k_; }
  std::size_t n() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Vertices may be given in any order.
  bool has_edge(std::span<const Vertex> vertices) const;
  bool has_sorted_edge(std::span<const Vertex> sorted) const {
    return index_->edges.contains(pack_sorted(sorted));
  }

  // Vertices v with sorted ∪ {v} an edge; `sorted` is a strictly increasing (k-1)-set.
  const VertexSet& completions(std::span<const Vertex> sorted) const;

  // Indices into edges() of the edges containing v, increasing.
  std::span<const std::uint32_t> incident_edges(Vertex v) const { return index_->incidence[v]; }

  // Number of edges containing each vertex.
  const std::vector<std::size_t>& vertex_degrees() const { return index_->vertex_degree; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  struct Index {
    std::unordered_set<SetKey, SetKeyHash> edges;
    std::unordered_map<SetKey, VertexSet, SetKeyHash> completions;
    std::vector<std::size_t> vertex_degree;
    std::vector<std::vector<std::uint32_t>> incidence;
    VertexSet empty;
  };
  void build_index();

  int k_ = 2;
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::shared_ptr<const Index> index_;
};

struct DegreeProfile {
  int level = 0;
  std::size_t min_degree = 0;
  std::vector<Vertex> argmin_set;
};

// A hypergraph whose vertex j stands for `original[j]` in the source graph.
struct Relabeled {
  Hypergraph graph;
  std::vector<Vertex> original;
};

// Number of edges containing S; requires |S| < k and S inside the vertex range.
std::size_t degree(const Hypergraph& h, std::span<const Vertex> s);

// Exact minimum of deg(S) over all i-sets; i = 0 gives the edge count.
DegreeProfile min_degree(const Hypergraph& h, int level);

// Link (k-1)-graph of x, on V(H) \ {x} relabelled to 0..n-2 in increasing order.
Relabeled link(const Hypergraph& h, Vertex x);

// H[S], relabelled to 0..|S|-1 following the increasing order of S.
Relabeled induced(const Hypergraph& h, std::span<const Vertex> s);

// H - G: drops every edge of H that is also an edge of G. Same k and n required.
Hypergraph minus(const Hypergraph& h, const Hypergraph& g);

// Disjoint union; vertices of `b` are shifted by a.n().
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);

// Binomial coefficient; saturates at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t r);

// Calls f(span) for every r-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
  std::vector<Vertex> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = static_cast<Vertex>(i);
  if (r > n) return;
  while (true) {
    f(std::span<const Vertex>(c));
    if (r == 0) return;
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace tightcycle
