#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tightcycle/constructions.hpp"
#include "tightcycle/cycle.hpp"
#include "tightcycle/hypergraph.hpp"

namespace tightcycle {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

// Counts branch nodes and throws BudgetExceeded once the limit is passed.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit = kDefaultNodeBudget) : limit_(limit) {}
  void tick();
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t used_ = 0;
  std::uint64_t limit_;
};

// ---- tight cycles ----

// Some tight cycle of length s through v, or nullopt when none exists. Requires s > k.
std::optional<TightCycle> find_cycle_through(const Hypergraph& h, Vertex v, int s,
                                             std::uint64_t budget = kDefaultNodeBudget);

// Every tight cycle of length s, each once, in canonical form and sorted. Requires s > k.
std::vector<TightCycle> enumerate_cycles(const Hypergraph& h, int s, std::uint64_t budget = kDefaultNodeBudget);

struct CoveringReport {
  VertexSet covered;
  VertexSet uncovered;
  std::vector<std::optional<TightCycle>> witness;  // indexed by vertex
};

// Per-vertex cycle search; a found cycle is recorded as the witness of all its vertices.
// With jobs > 1 the vertices are shared among worker threads; covered/uncovered do not
// depend on the job count.
CoveringReport covering_check(const Hypergraph& h, int s, std::uint64_t budget = kDefaultNodeBudget, int jobs = 1);

// ---- tilings ----

enum class TileKind { F, E, C };

// `image[p]` is the host vertex playing pattern vertex p. For C pieces the pattern is the
// cycle itself, so `image` is the cyclic order.
struct TilePiece {
  TileKind kind = TileKind::C;
  std::vector<Vertex> image;

  std::vector<Vertex> vertex_set() const;
};

struct Tiling {
  std::vector<TilePiece> pieces;
  std::size_t count(TileKind kind) const;
  VertexSet covered(std::size_t n) const;
};

// Distinct vertex sets carrying a copy of C^k_s, with one cyclic order each. For s == k
// the copies are the edges themselves.
struct CycleCopies {
  std::vector<VertexSet> sets;
  std::vector<std::vector<Vertex>> orders;
};
CycleCopies cycle_copies(const Hypergraph& h, int s, std::uint64_t budget = kDefaultNodeBudget);

// Exact cover search. Returns nullopt at once when s does not divide n.
std::optional<Tiling> perfect_tiling(const Hypergraph& h, int s, std::uint64_t budget = kDefaultNodeBudget);

// Maximum number of vertex-disjoint copies; optimal whenever it returns.
Tiling max_tiling(const Hypergraph& h, int s, std::uint64_t budget = kDefaultNodeBudget);

// Disjoint pieces, each a valid copy of its kind (F/E checked against `fam`, C against s).
bool validate_tiling(const Hypergraph& h, int s, const TileFamily* fam, const Tiling& t);

// ---- pattern embeddings ----

// Calls f(image) for embeddings of `pattern` into `host` (image[p] = host vertex of p).
// Twin vertices of the pattern are mapped in increasing order, so each copy is reported
// at most |Aut / twins| times. `pinned` fixes pattern vertices in advance. Stops when f
// returns false.
void for_each_embedding(const Hypergraph& pattern, const Hypergraph& host,
                        const std::vector<std::pair<Vertex, Vertex>>& pinned, NodeBudget& budget,
                        const std::function<bool(const std::vector<Vertex>&)>& f);

// One embedding per distinct vertex set.
std::vector<std::vector<Vertex>> distinct_copies(const Hypergraph& pattern, const Hypergraph& host,
                                                 NodeBudget& budget);

// 1 - (s/n)(|F| + 3/5 |E|)
mpq_class integral_phi(std::size_t n, int s, std::size_t f_count, std::size_t e_count);

struct FeTilingResult {
  Tiling tiling;
  mpq_class phi;
  bool optimal = true;
  std::uint64_t nodes = 0;
  std::size_t f_copies = 0;
  std::size_t e_copies = 0;
};

// Branch and bound over {F_s, E_s}-tilings minimising φ. On budget exhaustion returns the
// best tiling found with optimal = false.
FeTilingResult fe_tiling_min_phi(const Hypergraph& h, const TileFamily& fam,
                                 std::uint64_t budget = kDefaultNodeBudget);

// ---- auxiliary constructions ----

// A copy of K^k_k(t) containing v: the k classes, v in the first one.
std::optional<std::vector<std::vector<Vertex>>> find_kkk_through(const Hypergraph& h, Vertex v, int t,
                                                                std::uint64_t budget = kDefaultNodeBudget);
// The copy as a partitioned host on V(H).
PartitionedHost kkk_host(const Hypergraph& h, const std::vector<std::vector<Vertex>>& classes);

// H_xy on (V \ {x, y}) ∪ {z}: the edges of H avoiding x and y, plus {z} ∪ S for every
// (k-1)-set S in the common link of x and y. Vertex j < n-2 stands for original[j]; z = n-2.
struct LinkingHost {
  Hypergraph graph;
  std::vector<Vertex> original;
  Vertex z = 0;
};
LinkingHost linking_host(const Hypergraph& h, Vertex x, Vertex y);

struct AuxReport {
  std::vector<VertexSet> neighbourhoods;          // N_i = N_H(X \ {x_i})
  std::vector<std::pair<int, int>> graph_edges;   // 0-based pairs (i, j), i < j
  mpq_class threshold;                            // (ell/s + gamma) n
  bool bipartite = true;
  bool hypothesis_holds = false;                  // |N_i| >= (1/2 + 1/(2s) + gamma) n for all i
  std::vector<int> odd_cycle;                     // indices of an odd cycle when not bipartite
};

// ell defaults to |E(G_{τ^{-r}})| with r = s mod k.
AuxReport bipartite_aux(const Hypergraph& h, const Edge& x, int s, const mpq_class& gamma,
                        std::optional<int> ell = std::nullopt);

}  // namespace tightcycle
