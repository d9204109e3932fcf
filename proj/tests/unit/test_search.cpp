#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "tightcycle/constructions.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/search.hpp"

using namespace tightcycle;

namespace {

Hypergraph random_graph(int k, std::size_t n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> e) {
    if (coin(rng)) edges.emplace_back(e.begin(), e.end());
  });
  return Hypergraph(k, n, std::move(edges));
}

Hypergraph complete_graph(int k, std::size_t n) {
  std::vector<Edge> edges;
  for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> e) { edges.emplace_back(e.begin(), e.end()); });
  return Hypergraph(k, n, std::move(edges));
}

// Every injective sequence of length s starting at v, checked window by window.
std::size_t naive_cycles_through(const Hypergraph& h, Vertex v, int s) {
  std::vector<Vertex> seq{v};
  std::vector<bool> used(h.n(), false);
  used[v] = true;
  std::size_t count = 0;
  std::function<void()> rec = [&] {
    if (seq.size() == static_cast<std::size_t>(s)) {
      if (is_tight_cycle(h, seq)) ++count;
      return;
    }
    for (Vertex u = 0; u < h.n(); ++u) {
      if (used[u]) continue;
      used[u] = true;
      seq.push_back(u);
      rec();
      seq.pop_back();
      used[u] = false;
    }
  };
  rec();
  return count;
}

std::size_t count_in(const std::vector<Vertex>& vs, std::size_t below) {
  return static_cast<std::size_t>(std::count_if(vs.begin(), vs.end(), [&](Vertex v) { return v < below; }));
}

}  // namespace

TEST_CASE("cycle search agrees with permutation enumeration") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(trial % 3);
    const Hypergraph h = random_graph(3, n, 0.35 + 0.1 * (trial % 5), rng);
    for (int s = 4; s <= static_cast<int>(n); ++s) {
      std::size_t total = 0;
      for (Vertex v = 0; v < n; ++v) {
        const std::size_t naive = naive_cycles_through(h, v, s);
        total += naive;
        const auto found = find_cycle_through(h, v, s);
        CHECK(found.has_value() == (naive > 0));
        if (found) {
          CHECK(is_tight_cycle(h, found->vertices));
          CHECK(std::find(found->vertices.begin(), found->vertices.end(), v) != found->vertices.end());
        }
      }
      // Each cycle is counted once per vertex, per rotation start at that vertex and per direction.
      CHECK(enumerate_cycles(h, s).size() * 2 * static_cast<std::size_t>(s) == total);
    }
  }
}

TEST_CASE("tight cycles in ordinary graphs") {
  const Hypergraph c5(2, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(find_cycle_through(c5, 0, 5).has_value());
  CHECK_FALSE(find_cycle_through(c5, 0, 3).has_value());
  CHECK(enumerate_cycles(c5, 5).size() == 1);
  CHECK(enumerate_cycles(complete_graph(2, 4), 3).size() == 4);
  CHECK_THROWS_AS(find_cycle_through(c5, 0, 2), InputError);
}

TEST_CASE("parity construction blocks cycles through A") {
  const Hypergraph h = h0(3, 5, 5);
  for (Vertex v = 0; v < 5; ++v) CHECK_FALSE(find_cycle_through(h, v, 4).has_value());
  // s = 6: d = 3, so every cycle meets A in an even number of vertices.
  const auto cycles = enumerate_cycles(h, 6);
  CHECK_FALSE(cycles.empty());
  bool touches_a = false;
  for (const auto& c : cycles) {
    CHECK(count_in(c.vertices, 5) % 2 == 0);
    touches_a = touches_a || count_in(c.vertices, 5) > 0;
  }
  CHECK(touches_a);
}

TEST_CASE("covering reports") {
  const CoveringReport full = covering_check(complete_graph(3, 6), 5);
  CHECK(full.uncovered.empty());
  for (Vertex v = 0; v < 6; ++v) {
    REQUIRE(full.witness[v].has_value());
    CHECK(is_tight_cycle(complete_graph(3, 6), full.witness[v]->vertices));
  }
  const CoveringReport even = covering_check(h0(4, 5, 5), 5);
  CHECK(even.covered.empty());
  CHECK(even.uncovered.count() == 10);
  CHECK(covering_check(h0(4, 5, 5), 6, kDefaultNodeBudget, 2).uncovered.count() == 10);

  for (auto [s, n] : {std::pair{4, 8}, {5, 10}, {4, 12}}) {
    const BarrierGraph b = tiling_barrier(3, s, static_cast<std::size_t>(n));
    const CoveringReport rep = covering_check(b.graph, s);
    const VertexSet a = VertexSet::of(b.graph.n(), b.a);
    CHECK(rep.uncovered.subset_of(a));
  }
}

TEST_CASE("perfect and maximum tilings") {
  const BarrierGraph barrier = tiling_barrier(4, 5, 10);
  CHECK_FALSE(perfect_tiling(barrier.graph, 5).has_value());
  const Tiling best = max_tiling(barrier.graph, 5);
  CHECK(best.pieces.size() == barrier.t.size());
  CHECK(validate_tiling(barrier.graph, 5, nullptr, best));

  const Hypergraph k10 = complete_graph(4, 10);
  const auto perfect = perfect_tiling(k10, 5);
  REQUIRE(perfect.has_value());
  CHECK(perfect->pieces.size() == 2);
  CHECK(validate_tiling(k10, 5, nullptr, *perfect));
  CHECK(perfect->covered(10).count() == 10);

  CHECK_FALSE(perfect_tiling(complete_graph(4, 11), 5).has_value());
  CHECK_THROWS_AS(perfect_tiling(k10, 5, 3), BudgetExceeded);

  // s == k: perfect matchings.
  const Hypergraph path(2, 4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(perfect_tiling(path, 2)->pieces.size() == 2);
  const Hypergraph star(2, 4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK_FALSE(perfect_tiling(star, 2).has_value());
  CHECK(max_tiling(star, 2).pieces.size() == 1);
}

TEST_CASE("tiling validation rejects overlaps and fake cycles") {
  const Hypergraph k6 = complete_graph(3, 6);
  Tiling t;
  t.pieces.push_back({TileKind::C, {0, 1, 2, 3}});
  CHECK(validate_tiling(k6, 4, nullptr, t));
  t.pieces.push_back({TileKind::C, {3, 4, 5, 0}});
  CHECK_FALSE(validate_tiling(k6, 4, nullptr, t));
  const Hypergraph sparse(3, 4, {{0, 1, 2}, {1, 2, 3}, {0, 2, 3}});
  CHECK_FALSE(validate_tiling(sparse, 4, nullptr, Tiling{{{TileKind::C, {0, 1, 2, 3}}}}));
}

TEST_CASE("embeddings respect twins and pins") {
  // K^3(2,2,2) inside itself: 8 edges, |Aut| = 2^3 * 3!; twins cut it to 3!.
  const PartitionedHost k222 = complete_partite(3, {2, 2, 2});
  NodeBudget budget;
  std::size_t count = 0;
  for_each_embedding(k222.graph, k222.graph, {}, budget, [&](const std::vector<Vertex>&) {
    ++count;
    return true;
  });
  CHECK(count == 6);
  NodeBudget b2;
  CHECK(distinct_copies(k222.graph, complete_graph(3, 7), b2).size() == 7);
}

TEST_CASE("F/E tilings minimising phi") {
  const TileFamily fam = tile_family(3, 19);
  const FeTilingResult none = fe_tiling_min_phi(Hypergraph(3, 20), fam);
  CHECK(none.tiling.pieces.empty());
  CHECK(none.phi == 1);

  const FeTilingResult f = fe_tiling_min_phi(fam.f_s.graph, fam);
  CHECK(f.optimal);
  CHECK(f.tiling.count(TileKind::F) == 1);
  CHECK(f.phi == 0);
  CHECK(validate_tiling(fam.f_s.graph, fam.s, &fam, f.tiling));

  const FeTilingResult e = fe_tiling_min_phi(fam.e_s.graph, fam);
  CHECK(e.tiling.count(TileKind::E) == 1);
  mpq_class expected = 1 - mpq_class(3 * fam.s, 5 * 3 * fam.big_m);
  expected.canonicalize();
  CHECK(e.phi == expected);
  CHECK(integral_phi(18, 19, 0, 1) == mpq_class(11, 30));
}

TEST_CASE("complete k-partite copies through a vertex") {
  const Hypergraph k9 = complete_graph(3, 9);
  const auto found = find_kkk_through(k9, 4, 3);
  REQUIRE(found.has_value());
  CHECK((*found)[0].front() == 4);
  const PartitionedHost host = kkk_host(k9, *found);
  CHECK(host.graph.num_edges() == 27);
  for (const Edge& e : host.graph.edges()) CHECK(k9.has_edge(e));
  CHECK_FALSE(find_kkk_through(Hypergraph(3, 9), 0, 1).has_value());

  // Brute force over ordered pair-partitions containing v.
  const Hypergraph h = h0(3, 6, 6);
  for (Vertex v : {Vertex{0}, Vertex{7}}) {
    bool oracle = false;
    for_each_subset(12, 5, [&](std::span<const Vertex> rest) {
      if (oracle || std::find(rest.begin(), rest.end(), v) != rest.end()) return;
      std::vector<Vertex> six(rest.begin(), rest.end());
      six.push_back(v);
      std::sort(six.begin(), six.end());
      do {
        if (six[0] != v) continue;
        bool ok = true;
        for (int a = 0; a < 2 && ok; ++a)
          for (int b = 2; b < 4 && ok; ++b)
            for (int c = 4; c < 6 && ok; ++c) {
              const Vertex e[] = {six[static_cast<std::size_t>(a)], six[static_cast<std::size_t>(b)], six[static_cast<std::size_t>(c)]};
              ok = h.has_edge(e);
            }
        if (ok) oracle = true;
      } while (!oracle && std::next_permutation(six.begin(), six.end()));
    });
    CHECK(find_kkk_through(h, v, 2).has_value() == oracle);
  }
}

TEST_CASE("linking host") {
  // Vertices 5 and 6 are clones with identical links and no common edge.
  std::vector<Edge> clone_edges;
  for_each_subset(5, 3, [&](std::span<const Vertex> e) { clone_edges.emplace_back(e.begin(), e.end()); });
  for_each_subset(5, 2, [&](std::span<const Vertex> p) {
    clone_edges.push_back({p[0], p[1], 5});
    clone_edges.push_back({p[0], p[1], 6});
  });
  const Hypergraph clones(3, 7, clone_edges);
  const LinkingHost same = linking_host(clones, 5, 6);
  CHECK(same.graph.n() == 6);
  CHECK(same.z == 5);
  const Vertex zs[] = {same.z};
  const Vertex xs[] = {5};
  CHECK(degree(same.graph, zs) == degree(clones, xs));

  const Hypergraph k6 = complete_graph(3, 6);
  const LinkingHost lh = linking_host(k6, 1, 4);
  CHECK(lh.z == 4);

  // Disjoint links: z gets no edges.
  const Hypergraph split(3, 6, {{0, 2, 3}, {1, 4, 5}, {2, 3, 4}});
  const LinkingHost apart = linking_host(split, 0, 1);
  const Vertex z2[] = {apart.z};
  CHECK(degree(apart.graph, z2) == 0);
  CHECK(apart.graph.num_edges() == 1);

  // A spanning cycle through z lifts to spanning cycles through x and through y.
  const auto c = find_cycle_through(lh.graph, lh.z, 5);
  REQUIRE(c.has_value());
  for (Vertex sub : {Vertex{1}, Vertex{4}}) {
    std::vector<Vertex> lifted;
    for (Vertex u : c->vertices) lifted.push_back(u == lh.z ? sub : lh.original[u]);
    CHECK(is_tight_cycle(k6, lifted));
  }
  CHECK_THROWS_AS(linking_host(k6, 2, 2), InputError);
}

TEST_CASE("auxiliary threshold graph") {
  const Hypergraph k12 = complete_graph(3, 12);
  const AuxReport full = bipartite_aux(k12, {0, 1, 2}, 19, mpq_class(1, 100));
  CHECK(full.graph_edges.empty());
  CHECK(full.bipartite);
  CHECK(full.hypothesis_holds);

  const Hypergraph g(2, 4, {{0, 1}, {1, 2}});
  const AuxReport two = bipartite_aux(g, {0, 1}, 5, 0, 1);
  CHECK(two.neighbourhoods.size() == 2);
  CHECK(two.bipartite);

  // A triangle in G_X is reported as an odd cycle (hypothesis fails here).
  std::vector<Edge> edges{{0, 1, 2}};
  const AuxReport tri = bipartite_aux(Hypergraph(3, 9, edges), {0, 1, 2}, 19, 0, 2);
  CHECK_FALSE(tri.hypothesis_holds);
  CHECK(tri.graph_edges.size() == 3);
  CHECK_FALSE(tri.bipartite);
  CHECK(tri.odd_cycle.size() == 3);
  CHECK_THROWS_AS(bipartite_aux(k12, {0, 1}, 19, 0), InputError);
}

TEST_CASE("spanning cycles of the F tile") {
  const TileFamily fam = tile_family(3, 19);
  for (Vertex v : {Vertex{0}, fam.f_s.pendants.front(), Vertex{12}}) {
    const auto c = find_cycle_through(fam.f_s.graph, v, fam.s);
    REQUIRE(c.has_value());
    CHECK(is_tight_cycle(fam.f_s.graph, c->vertices));
  }
}
