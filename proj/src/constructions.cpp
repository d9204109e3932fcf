#include "tightcycle/constructions.hpp"

#include <numeric>
#include <string>

#include "tightcycle/errors.hpp"

namespace tightcycle {

namespace {

// Appends every transversal of the given classes (one vertex from each) extended by `prefix`.
void add_transversals(const std::vector<const std::vector<Vertex>*>& parts, Edge& current, std::size_t depth,
                      std::vector<Edge>& out) {
  if (depth == parts.size()) {
    out.push_back(current);
    return;
  }
  for (Vertex v : *parts[depth]) {
    current.push_back(v);
    add_transversals(parts, current, depth + 1, out);
    current.pop_back();
  }
}

}  // namespace

PartitionedHost complete_partite(int k, const std::vector<std::size_t>& sizes) {
  if (k < 1) throw InputError("k must be positive");
  if (sizes.size() < static_cast<std::size_t>(k))
    throw InputError("a complete (k,s)-graph needs at least k = " + std::to_string(k) + " classes, got " +
                     std::to_string(sizes.size()));
  std::vector<std::vector<Vertex>> classes;
  Vertex next = 0;
  for (std::size_t size : sizes) {
    if (size == 0) throw InputError("class sizes must be positive");
    std::vector<Vertex> c(size);
    std::iota(c.begin(), c.end(), next);
    next += static_cast<Vertex>(size);
    classes.push_back(std::move(c));
  }
  std::vector<Edge> edges;
  for_each_subset(classes.size(), static_cast<std::size_t>(k), [&](std::span<const Vertex> chosen) {
    std::vector<const std::vector<Vertex>*> parts;
    for (Vertex c : chosen) parts.push_back(&classes[c]);
    Edge current;
    add_transversals(parts, current, 0, edges);
  });
  PartitionedHost host;
  host.graph = Hypergraph(k, next, std::move(edges));
  host.classes = VertexPartition(next, std::move(classes));
  return host;
}

Hypergraph h0(int k, std::size_t a_size, std::size_t b_size) {
  const std::size_t n = a_size + b_size;
  std::vector<Edge> edges;
  for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> e) {
    std::size_t in_a = 0;
    for (Vertex v : e) in_a += v < a_size ? 1 : 0;
    if ((in_a % 2) != static_cast<std::size_t>(k % 2)) edges.emplace_back(e.begin(), e.end());
  });
  return Hypergraph(k, n, std::move(edges));
}

Admissibility admissible(int k, int s) {
  if (k < 2 || k >= s) throw InputError("admissibility needs 2 <= k < s, got k = " + std::to_string(k) + ", s = " + std::to_string(s));
  Admissibility out;
  out.d = std::gcd(k, s);
  out.admissible = out.d == 1 || (k / out.d) % 2 == 0;
  return out;
}

BarrierGraph tiling_barrier(int k, int s, std::size_t n) {
  if (!admissible(k, s).admissible)
    throw InputError("(" + std::to_string(k) + "," + std::to_string(s) + ") is not an admissible pair");
  if (n % static_cast<std::size_t>(s) != 0) throw InputError("s must divide n");
  BarrierGraph out;
  long long t_size = 0;
  const auto nn = static_cast<long long>(n);
  if (k % 2 == 0) {
    t_size = nn / s - 1;
  } else {
    t_size = nn * k / (2LL * s * (k - 1) + k) - 1;
    if (t_size <= 0) {
      out.degenerate = true;
      t_size = 0;
    }
  }
  const auto t = static_cast<std::size_t>(t_size);
  const std::size_t a_size = (n - t + 1) / 2;
  const std::size_t b_size = (n - t) / 2;
  for (Vertex v = 0; v < n; ++v) {
    if (v < a_size)
      out.a.push_back(v);
    else if (v < a_size + b_size)
      out.b.push_back(v);
    else
      out.t.push_back(v);
  }
  std::vector<Edge> edges;
  for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> e) {
    std::size_t in_a = 0;
    bool meets_t = false;
    for (Vertex v : e) {
      in_a += v < a_size ? 1 : 0;
      meets_t = meets_t || v >= a_size + b_size;
    }
    if (meets_t || (in_a % 2) != static_cast<std::size_t>(k % 2)) edges.emplace_back(e.begin(), e.end());
  });
  out.graph = Hypergraph(k, n, std::move(edges));
  return out;
}

PartitionedHost gadget_host(const PartitionedHost& host, const ClassGraph& g) {
  const int k = host.graph.k();
  if (host.classes.num_classes() != k) throw InputError("gadget host needs a complete (k,k)-graph");
  if (g.k() != k) throw InputError("class graph must live on [k]");
  PartitionedHost out;
  const std::size_t n = host.graph.n() + g.size();
  std::vector<Edge> edges = host.graph.edges();
  auto w = static_cast<Vertex>(host.graph.n());
  for (auto [a, b] : g.edges()) {
    for (int missing : {a, b}) {
      std::vector<const std::vector<Vertex>*> parts;
      for (int c = 1; c <= k; ++c)
        if (c != missing) parts.push_back(&host.classes.at(c));
      Edge current{w};
      add_transversals(parts, current, 0, edges);
    }
    out.pendants.push_back(w);
    out.pendant_edges.emplace_back(a, b);
    ++w;
  }
  out.graph = Hypergraph(k, n, std::move(edges));
  out.classes = VertexPartition(n, host.classes.classes());
  return out;
}

}  // namespace tightcycle
