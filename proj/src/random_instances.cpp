#include "tightcycle/random_instances.hpp"

#include <algorithm>
#include <set>

#include "tightcycle/errors.hpp"

namespace tightcycle {

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("empty range");
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

std::vector<Vertex> SeededRng::permutation(std::size_t n) {
  std::vector<Vertex> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Vertex>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(i)]);
  return p;
}

Hypergraph random_hypergraph(int k, std::size_t n, std::uint64_t num, std::uint64_t den, SeededRng& rng) {
  std::vector<Edge> edges;
  for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> e) {
    if (rng.chance(num, den)) edges.emplace_back(e.begin(), e.end());
  });
  return Hypergraph(k, n, std::move(edges));
}

PlantedInstance planted_instance(const TileFamily& fam, std::size_t n, int f_count, int e_count,
                                 std::uint64_t noise_num, std::uint64_t noise_den, SeededRng& rng) {
  const std::size_t need = static_cast<std::size_t>(f_count) * fam.f_s.graph.n() +
                           static_cast<std::size_t>(e_count) * fam.e_s.graph.n();
  if (need > n) throw InputError("planted copies need " + std::to_string(need) + " vertices, only " + std::to_string(n) + " given");
  const std::vector<Vertex> perm = rng.permutation(n);
  PlantedInstance out;
  std::set<Edge> edges;
  std::size_t next = 0;
  auto plant = [&](const Hypergraph& pattern, std::vector<std::vector<Vertex>>& images) {
    std::vector<Vertex> image(pattern.n());
    for (std::size_t p = 0; p < pattern.n(); ++p) image[p] = perm[next++];
    for (const Edge& pe : pattern.edges()) {
      Edge e;
      for (Vertex p : pe) e.push_back(image[p]);
      std::sort(e.begin(), e.end());
      edges.insert(e);
    }
    images.push_back(std::move(image));
  };
  for (int i = 0; i < f_count; ++i) plant(fam.f_s.graph, out.f_images);
  for (int i = 0; i < e_count; ++i) plant(fam.e_s.graph, out.e_images);
  for_each_subset(n, static_cast<std::size_t>(fam.k), [&](std::span<const Vertex> e) {
    if (rng.chance(noise_num, noise_den)) edges.insert(Edge(e.begin(), e.end()));
  });
  out.graph = Hypergraph(fam.k, n, std::vector<Edge>(edges.begin(), edges.end()));
  return out;
}

}  // namespace tightcycle
