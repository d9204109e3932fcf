#include "tightcycle/hypergraph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tightcycle/errors.hpp"

namespace tightcycle {

SetKey pack_sorted(std::span<const Vertex> sorted) {
  SetKey key;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const std::uint64_t v = static_cast<std::uint64_t>(sorted[i]) + 1;  // 0 marks an empty slot
    if (i < 4)
      key.lo |= v << (16 * i);
    else
      key.hi |= v << (16 * (i - 4));
  }
  return key;
}

std::size_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    const std::size_t num = n - r + i;
    if (result > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
    result = result * num / i;
  }
  return result;
}

Hypergraph::Hypergraph(int k, std::size_t n) : Hypergraph(k, n, {}) {}

Hypergraph::Hypergraph(int k, std::size_t n, std::vector<Edge> edges) : k_(k), n_(n), edges_(std::move(edges)) {
  if (k < 1 || static_cast<std::size_t>(k) > kMaxUniformity)
    throw InputError("uniformity must lie in [1, " + std::to_string(kMaxUniformity) + "], got " + std::to_string(k));
  if (n > kMaxVertices) throw InputError("at most " + std::to_string(kMaxVertices) + " vertices are supported");
  for (auto& e : edges_) {
    if (e.size() != static_cast<std::size_t>(k))
      throw InputError("edge of size " + std::to_string(e.size()) + " in a " + std::to_string(k) + "-graph");
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] >= n) throw InputError("vertex " + std::to_string(e[i]) + " out of range [0, " + std::to_string(n) + ")");
      if (i > 0 && e[i] == e[i - 1]) throw InputError("edge repeats vertex " + std::to_string(e[i]));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw InputError("duplicate edge");
  build_index();
}

void Hypergraph::build_index() {
  auto index = std::make_shared<Index>();
  index->vertex_degree.assign(n_, 0);
  index->incidence.assign(n_, {});
  index->empty = VertexSet(n_);
  index->edges.reserve(edges_.size() * 2);
  std::vector<Vertex> rest(static_cast<std::size_t>(k_ - 1));
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    index->edges.insert(pack_sorted(e));
    for (Vertex v : e) index->incidence[v].push_back(static_cast<std::uint32_t>(id));
    for (std::size_t skip = 0; skip < e.size(); ++skip) {
      ++index->vertex_degree[e[skip]];
      std::size_t j = 0;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != skip) rest[j++] = e[i];
      auto [it, inserted] = index->completions.try_emplace(pack_sorted(rest), n_);
      it->second.insert(e[skip]);
    }
  }
  index_ = std::move(index);
}

bool Hypergraph::has_edge(std::span<const Vertex> vertices) const {
  if (vertices.size() != static_cast<std::size_t>(k_)) return false;
  Vertex buf[kMaxUniformity];
  std::copy(vertices.begin(), vertices.end(), buf);
  std::sort(buf, buf + vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (buf[i] >= n_) return false;
    if (i > 0 && buf[i] == buf[i - 1]) return false;
  }
  return has_sorted_edge(std::span<const Vertex>(buf, vertices.size()));
}

const VertexSet& Hypergraph::completions(std::span<const Vertex> sorted) const {
  auto it = index_->completions.find(pack_sorted(sorted));
  return it == index_->completions.end() ? index_->empty : it->second;
}

namespace {

void check_vertices(const Hypergraph& h, std::span<const Vertex> s) {
  for (Vertex v : s)
    if (v >= h.n()) throw InputError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(h.n()) + ")");
}

std::vector<Vertex> sorted_unique(std::span<const Vertex> s) {
  std::vector<Vertex> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw InputError("vertex set contains a repeated vertex");
  return out;
}

}  // namespace

std::size_t degree(const Hypergraph& h, std::span<const Vertex> s) {
  if (s.size() >= static_cast<std::size_t>(h.k()))
    throw InputError("degree set must have fewer than k = " + std::to_string(h.k()) + " vertices");
  check_vertices(h, s);
  const auto set = sorted_unique(s);
  std::size_t count = 0;
  for (const auto& e : h.edges())
    if (std::includes(e.begin(), e.end(), set.begin(), set.end())) ++count;
  return count;
}

DegreeProfile min_degree(const Hypergraph& h, int level) {
  if (level < 0 || level >= h.k())
    throw InputError("degree level must satisfy 0 <= i < k, got i = " + std::to_string(level));
  DegreeProfile profile;
  profile.level = level;
  if (level == 0) {
    profile.min_degree = h.num_edges();
    return profile;
  }
  const auto i = static_cast<std::size_t>(level);
  std::unordered_map<SetKey, std::size_t, SetKeyHash> counts;
  for (const auto& e : h.edges()) {
    for_each_subset(e.size(), i, [&](std::span<const Vertex> pos) {
      Vertex buf[kMaxUniformity];
      for (std::size_t j = 0; j < i; ++j) buf[j] = e[pos[j]];
      ++counts[pack_sorted(std::span<const Vertex>(buf, i))];
    });
  }
  bool first = true;
  for_each_subset(h.n(), i, [&](std::span<const Vertex> s) {
    auto it = counts.find(pack_sorted(s));
    const std::size_t d = it == counts.end() ? 0 : it->second;
    if (first || d < profile.min_degree) {
      profile.min_degree = d;
      profile.argmin_set.assign(s.begin(), s.end());
      first = false;
    }
  });
  return profile;
}

Relabeled link(const Hypergraph& h, Vertex x) {
  check_vertices(h, std::span<const Vertex>(&x, 1));
  Relabeled out;
  for (Vertex v = 0; v < h.n(); ++v)
    if (v != x) out.original.push_back(v);
  const auto shift = [x](Vertex v) { return v > x ? v - 1 : v; };
  std::vector<Edge> edges;
  for (const auto& e : h.edges()) {
    if (!std::binary_search(e.begin(), e.end(), x)) continue;
    Edge rest;
    for (Vertex v : e)
      if (v != x) rest.push_back(shift(v));
    edges.push_back(std::move(rest));
  }
  out.graph = Hypergraph(h.k() - 1, h.n() - 1, std::move(edges));
  return out;
}

Relabeled induced(const Hypergraph& h, std::span<const Vertex> s) {
  check_vertices(h, s);
  Relabeled out;
  out.original = sorted_unique(s);
  std::vector<std::int64_t> to_new(h.n(), -1);
  for (std::size_t j = 0; j < out.original.size(); ++j) to_new[out.original[j]] = static_cast<std::int64_t>(j);
  std::vector<Edge> edges;
  for (const auto& e : h.edges()) {
    Edge mapped;
    for (Vertex v : e) {
      if (to_new[v] < 0) break;
      mapped.push_back(static_cast<Vertex>(to_new[v]));
    }
    if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
  }
  out.graph = Hypergraph(h.k(), out.original.size(), std::move(edges));
  return out;
}

Hypergraph minus(const Hypergraph& h, const Hypergraph& g) {
  if (h.k() != g.k() || h.n() != g.n()) throw InputError("minus requires hypergraphs with equal k and n");
  std::vector<Edge> edges;
  for (const auto& e : h.edges())
    if (!g.has_sorted_edge(e)) edges.push_back(e);
  return Hypergraph(h.k(), h.n(), std::move(edges));
}

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
  if (a.k() != b.k()) throw InputError("disjoint union requires equal uniformity");
  std::vector<Edge> edges = a.edges();
  const auto shift = static_cast<Vertex>(a.n());
  for (auto e : b.edges()) {
    for (auto& v : e) v += shift;
    edges.push_back(std::move(e));
  }
  return Hypergraph(a.k(), a.n() + b.n(), std::move(edges));
}

}  // namespace tightcycle
