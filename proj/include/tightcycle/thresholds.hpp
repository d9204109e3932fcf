#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "tightcycle/hypergraph.hpp"
#include "tightcycle/search.hpp"

namespace tightcycle {

// ex: contains a C^k_s; c: every vertex lies on a C^k_s; t: perfect C^k_s-tiling.
// With s == k the pattern is a single edge.
enum class ThresholdKind { Ex, C, T };

std::string to_string(ThresholdKind kind);
ThresholdKind parse_threshold_kind(std::string_view text);

// Decides the property with the search module.
bool has_property(ThresholdKind kind, const Hypergraph& h, int s, std::uint64_t budget = kDefaultNodeBudget);

struct ThresholdOptions {
  bool pruned = true;        // orderly generation of canonical graphs; false runs the plain 2^E sweep
  unsigned jobs = 1;
  std::string cache_dir;     // empty disables the on-disk cache (only used when pruned)
  std::uint64_t budget = kDefaultNodeBudget;  // graphs visited
};

struct ThresholdResult {
  ThresholdKind kind = ThresholdKind::Ex;
  int k = 0;
  int s = 0;
  std::size_t n = 0;
  int i = 0;
  std::size_t value = 0;  // max δ_i over graphs without the property
  Hypergraph witness;     // attains value, lacks the property
  std::uint64_t graphs_examined = 0;
  bool trivial = false;        // t with s ∤ n
  bool from_cache = false;
  bool uninformative = false;  // c_i with i <= k-2: tiny n says nothing about growth
  bool pruned = true;
};

// Exact threshold by exhaustive search. Requires 2 <= k <= s, 1 <= i <= k-1 and
// C(n, k) <= 64 (<= 24 for the unpruned sweep). Throws BudgetExceeded.
ThresholdResult brute_threshold(ThresholdKind kind, int k, int s, std::size_t n, int i,
                                const ThresholdOptions& options = {});

nlohmann::json to_json(const ThresholdResult& r);
ThresholdResult threshold_from_json(const nlohmann::json& j);

std::string threshold_csv_header();
std::string threshold_csv_row(const ThresholdResult& r);

struct BoundCheck {
  std::string name;           // covering | tiling | barrier
  std::string construction;   // human-readable parameters
  long claimed = 0;           // closed-form lower bound
  std::size_t achieved = 0;   // exact δ_{k-1} of the construction
  bool degree_ok = false;     // achieved >= claimed
  bool obstruction_holds = false;
  bool partial = false;       // obstruction search ran out of budget
  Hypergraph graph;
};

struct LowerBoundReport {
  int k = 0;
  int s = 0;
  std::size_t n = 0;
  bool admissible = false;
  std::vector<BoundCheck> checks;

  bool ok() const;
};

// Builds each applicable construction, measures δ_{k-1} and certifies its obstruction:
// covering (admissible pairs): h0 on ⌈n/2⌉ + ⌊n/2⌋ leaves A uncovered (every vertex for even k);
// tiling (s | n): h0 with |A| ≢ 0 mod s/d has no perfect tiling;
// barrier (admissible, s | n): the T-augmented construction has no perfect tiling.
LowerBoundReport verify_lower_bounds(int k, int s, std::size_t n, std::uint64_t budget = kDefaultNodeBudget);

struct ChainReport {
  bool contains = false;
  bool covering = false;
  bool perfect_tiling = false;
  bool consistent = false;  // tiling implies covering implies containment
};

ChainReport chain_check(const Hypergraph& h, int s, std::uint64_t budget = kDefaultNodeBudget);

}  // namespace tightcycle
