#include <filesystem>

#include "doctest.h"
#include "tightcycle/constructions.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/thresholds.hpp"

using namespace tightcycle;

namespace {

Hypergraph complete_graph(int k, std::size_t n) {
  std::vector<Edge> edges;
  for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> e) { edges.emplace_back(e.begin(), e.end()); });
  return Hypergraph(k, n, std::move(edges));
}

void check_witness(const ThresholdResult& r) {
  CHECK(min_degree(r.witness, r.i).min_degree == r.value);
  if (!r.trivial) CHECK_FALSE(has_property(r.kind, r.witness, r.s));
}

ThresholdOptions unpruned() {
  ThresholdOptions o;
  o.pruned = false;
  return o;
}

}  // namespace

TEST_CASE("classical graph thresholds") {
  // Triangle tiling and perfect matching on six vertices.
  const ThresholdResult tri = brute_threshold(ThresholdKind::T, 2, 3, 6, 1);
  CHECK(tri.value == 3);
  check_witness(tri);
  const ThresholdResult match = brute_threshold(ThresholdKind::T, 2, 2, 6, 1);
  CHECK(match.value == 2);
  check_witness(match);
  // Mantel: K_{3,3} is the densest triangle-free graph on six vertices.
  const ThresholdResult mantel = brute_threshold(ThresholdKind::Ex, 2, 3, 6, 1);
  CHECK(mantel.value == 3);
  check_witness(mantel);
}

TEST_CASE("pruned and unpruned sweeps agree") {
  const ThresholdResult a = brute_threshold(ThresholdKind::Ex, 3, 4, 6, 2);
  const ThresholdResult b = brute_threshold(ThresholdKind::Ex, 3, 4, 6, 2, unpruned());
  CHECK(a.value == b.value);
  CHECK(a.graphs_examined < b.graphs_examined);
  check_witness(a);
  check_witness(b);
  for (auto kind : {ThresholdKind::Ex, ThresholdKind::C, ThresholdKind::T})
    for (int s : {3, 4}) {
      CAPTURE(s);
      CHECK(brute_threshold(kind, 2, s, 6, 1).value == brute_threshold(kind, 2, s, 6, 1, unpruned()).value);
    }
  CHECK(brute_threshold(ThresholdKind::C, 3, 4, 5, 1).value == brute_threshold(ThresholdKind::C, 3, 4, 5, 1, unpruned()).value);
}

TEST_CASE("monotone chain ex <= c <= t") {
  for (int s : {3, 4, 5}) {
    const auto ex = brute_threshold(ThresholdKind::Ex, 2, s, 6, 1).value;
    const auto c = brute_threshold(ThresholdKind::C, 2, s, 6, 1).value;
    const auto t = brute_threshold(ThresholdKind::T, 2, s, 6, 1).value;
    CAPTURE(s);
    CHECK(ex <= c);
    CHECK(c <= t);
  }
}

TEST_CASE("non-divisible tiling and labels") {
  const ThresholdResult r = brute_threshold(ThresholdKind::T, 3, 4, 6, 1);
  CHECK(r.trivial);
  CHECK(r.value == 10);  // C(5, 2)
  CHECK(brute_threshold(ThresholdKind::C, 3, 4, 5, 1).uninformative);
  CHECK_FALSE(brute_threshold(ThresholdKind::C, 3, 4, 5, 2).uninformative);
  CHECK(threshold_csv_row(r).find("formula") != std::string::npos);
  CHECK_THROWS_AS(brute_threshold(ThresholdKind::Ex, 3, 4, 6, 3), InputError);
  CHECK_THROWS_AS(brute_threshold(ThresholdKind::Ex, 3, 4, 6, 2, [] {
                    ThresholdOptions o;
                    o.budget = 5;
                    return o;
                  }()),
                  BudgetExceeded);
}

TEST_CASE("parallel sweep and cache") {
  ThresholdOptions par;
  par.jobs = 3;
  const ThresholdResult a = brute_threshold(ThresholdKind::C, 2, 3, 7, 1);
  const ThresholdResult b = brute_threshold(ThresholdKind::C, 2, 3, 7, 1, par);
  CHECK(a.value == b.value);
  CHECK(a.witness == b.witness);

  const auto dir = std::filesystem::temp_directory_path() / "tightcycle_threshold_cache_test";
  std::filesystem::remove_all(dir);
  ThresholdOptions cached;
  cached.cache_dir = dir.string();
  const ThresholdResult first = brute_threshold(ThresholdKind::Ex, 2, 3, 6, 1, cached);
  const ThresholdResult second = brute_threshold(ThresholdKind::Ex, 2, 3, 6, 1, cached);
  CHECK_FALSE(first.from_cache);
  CHECK(second.from_cache);
  CHECK(second.value == first.value);
  CHECK(second.witness == first.witness);
  std::filesystem::remove_all(dir);
}

TEST_CASE("lower bound constructions") {
  const LowerBoundReport r = verify_lower_bounds(4, 5, 10);
  CHECK(r.admissible);
  CHECK(r.ok());
  bool saw_barrier = false;
  for (const BoundCheck& c : r.checks)
    if (c.name == "barrier") {
      saw_barrier = true;
      CHECK(c.claimed == 2);
      CHECK(c.achieved >= 2);
    }
  CHECK(saw_barrier);

  const LowerBoundReport odd = verify_lower_bounds(3, 4, 10);
  CHECK(odd.ok());
  REQUIRE(odd.checks.size() == 1);
  CHECK(odd.checks[0].name == "covering");

  // Not admissible: only the unconditional tiling bound applies.
  const LowerBoundReport six = verify_lower_bounds(6, 8, 8);
  CHECK_FALSE(six.admissible);
  REQUIRE(six.checks.size() == 1);
  CHECK(six.checks[0].name == "tiling");
  CHECK(six.ok());
}

TEST_CASE("chain check") {
  const ChainReport full = chain_check(complete_graph(3, 8), 4);
  CHECK(full.contains);
  CHECK(full.covering);
  CHECK(full.perfect_tiling);
  CHECK(full.consistent);
  const ChainReport empty = chain_check(Hypergraph(3, 8), 4);
  CHECK_FALSE(empty.contains);
  CHECK(empty.consistent);
  const ChainReport parity = chain_check(h0(4, 5, 5), 5);
  CHECK_FALSE(parity.contains);
  CHECK_FALSE(parity.covering);
  CHECK_FALSE(parity.perfect_tiling);
}
