#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "tightcycle/constructions.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/io.hpp"

using namespace tightcycle;

namespace {

Hypergraph complete_graph(int k, std::size_t n) {
  std::vector<Edge> edges;
  for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> e) { edges.emplace_back(e.begin(), e.end()); });
  return Hypergraph(k, n, std::move(edges));
}

Hypergraph random_graph(int k, std::size_t n, double p, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> e) {
    if (coin(rng)) edges.emplace_back(e.begin(), e.end());
  });
  return Hypergraph(k, n, std::move(edges));
}

// Brute-force degree by scanning the edge list.
std::size_t scan_degree(const Hypergraph& h, const std::vector<Vertex>& s) {
  std::size_t count = 0;
  for (const auto& e : h.edges())
    if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return std::find(e.begin(), e.end(), v) != e.end(); })) ++count;
  return count;
}

}  // namespace

TEST_CASE("edges are validated and canonicalised") {
  CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 1, 1}}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 1, 4}}), InputError);
  CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 1, 2}, {2, 1, 0}}), InputError);
  Hypergraph h(3, 4, {{3, 1, 2}, {2, 0, 1}});
  CHECK(h.edges() == std::vector<Edge>{{0, 1, 2}, {1, 2, 3}});
  const Vertex unsorted[] = {2, 3, 1};
  CHECK(h.has_edge(unsorted));
}

TEST_CASE("degree on complete and empty graphs") {
  const Hypergraph k5 = complete_graph(3, 5);
  const Vertex pair[] = {0, 1};
  CHECK(degree(k5, pair) == 3);
  CHECK(degree(Hypergraph(3, 5), pair) == 0);
  const Vertex too_big[] = {0, 1, 2};
  CHECK_THROWS_AS(degree(k5, too_big), InputError);
  const Vertex out_of_range[] = {0, 7};
  CHECK_THROWS_AS(degree(k5, out_of_range), InputError);
}

TEST_CASE("parity graph codegree bound") {
  const Hypergraph h = h0(3, 4, 4);
  for (Vertex a = 0; a < 8; ++a)
    for (Vertex b = a + 1; b < 8; ++b) {
      const Vertex s[] = {a, b};
      CHECK(degree(h, s) >= 2);
    }
  const Hypergraph h10 = h0(3, 5, 5);
  CHECK(min_degree(h10, 2).min_degree >= 3);
}

TEST_CASE("min_degree matches a brute-force scan") {
  for (std::uint32_t seed = 1; seed <= 6; ++seed) {
    const Hypergraph h = random_graph(3, 8, 0.5, seed);
    CHECK(min_degree(h, 0).min_degree == h.num_edges());
    for (int level = 1; level < 3; ++level) {
      std::size_t best = SIZE_MAX;
      for_each_subset(8, static_cast<std::size_t>(level), [&](std::span<const Vertex> s) {
        best = std::min(best, scan_degree(h, std::vector<Vertex>(s.begin(), s.end())));
      });
      const DegreeProfile p = min_degree(h, level);
      CHECK(p.min_degree == best);
      CHECK(scan_degree(h, p.argmin_set) == best);
      CHECK(p.min_degree <= binomial(8 - static_cast<std::size_t>(level), 3 - static_cast<std::size_t>(level)));
    }
  }
  CHECK_THROWS_AS(min_degree(complete_graph(3, 5), 3), InputError);
}

TEST_CASE("link and induced subgraphs") {
  const Relabeled l = link(complete_graph(3, 4), 0);
  CHECK(l.graph == complete_graph(2, 3));
  CHECK(link(Hypergraph(3, 5), 2).graph.num_edges() == 0);
  const Hypergraph h = h0(3, 4, 4);
  for (Vertex x = 0; x < 8; ++x) {
    const Vertex s[] = {x};
    CHECK(link(h, x).graph.num_edges() == degree(h, s));
  }
  const Vertex four[] = {0, 2, 3, 4};
  CHECK(induced(complete_graph(3, 5), four).graph == complete_graph(3, 4));
  const Vertex a_side[] = {0, 1, 2, 3};
  CHECK(induced(h, a_side).graph.num_edges() == 0);
  CHECK(minus(h, h).num_edges() == 0);
}

TEST_CASE("induced is functorial on random graphs") {
  std::mt19937 rng(7);
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    const Hypergraph h = random_graph(3, 9, 0.4, seed);
    std::vector<Vertex> s, t;
    for (Vertex v = 0; v < 9; ++v) {
      if (rng() % 3 != 0) s.push_back(v);
    }
    const Relabeled first = induced(h, s);
    for (Vertex j = 0; j < first.original.size(); ++j)
      if (rng() % 2) t.push_back(j);
    const Relabeled second = induced(first.graph, t);
    std::vector<Vertex> both;
    for (Vertex j : t) both.push_back(first.original[j]);
    CHECK(second.graph == induced(h, both).graph);
  }
}

TEST_CASE("text and json round trips") {
  const Hypergraph h = random_graph(3, 7, 0.4, 3);
  CHECK(parse_hg(format_hg(h, {"sample"})) == h);
  CHECK(hypergraph_from_json(to_json(h)) == h);
  CHECK_THROWS_AS(parse_hg("3 4 2\n0 1 2\n"), InputError);
  CHECK_THROWS_AS(parse_hg("3 4 1\n0 1 9\n"), InputError);
  CHECK(parse_hg("# comment\n3 4 1\n2 1 0\n").num_edges() == 1);
}
