#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightcycle/cycle.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/partition.hpp"
#include "tightcycle/perm.hpp"

namespace tightcycle {

// A tight path typed against the classes V_1..V_k of `frame`.
struct TightPath {
  std::vector<Vertex> vertices;
  VertexPartition frame;

  std::size_t length() const { return vertices.size(); }
};

// End type σ: v_{l-k+i} ∈ V_{σ(i)} for 2 <= i <= k, σ(1) the unused class.
std::optional<Perm> end_type(const TightPath& p);
// Start type σ: v_i ∈ V_{σ(i)} for 1 <= i <= k-1, σ(k) the unused class.
std::optional<Perm> start_type(const TightPath& p);

// Throws InputError unless the path is tight in h, has >= k-1 vertices and a k-class frame.
void validate_path(const Hypergraph& h, const TightPath& p);

TightPath simple_extend(const Hypergraph& h, const TightPath& p, Vertex x);

using ClassPair = std::pair<int, int>;  // (i, j) with i < j

// Vertices picked by the constructive gadget search; enough to write down the (W3) paths.
struct GadgetWitness {
  Vertex star_i = 0;  // x*_i ∈ V_i
  Vertex star_j = 0;  // x*_j ∈ V_j
  std::map<int, std::pair<Vertex, Vertex>> pairs;  // class r ∉ {i, j} -> (x_r, x'_r)
};

struct GadgetPiece {
  std::vector<Vertex> members;  // sorted
  Vertex outside = 0;
  std::optional<GadgetWitness> witness;
};

struct Gadget {
  std::map<ClassPair, GadgetPiece> pieces;

  ClassGraph graph(int k) const;
  std::vector<Vertex> vertices() const;
  bool empty() const { return pieces.empty(); }
};

struct GadgetReport {
  bool w1 = true;
  bool w2 = true;
  bool w3 = true;
  bool w4 = true;
  bool covers_graph = true;  // a piece exists for every edge of G
  std::vector<std::string> violations;

  bool ok() const { return w1 && w2 && w3 && w4 && covers_graph; }
};

// Clause-by-clause check; (W3) is decided by exhaustive search inside each H[W_ij].
GadgetReport verify_gadget(const Hypergraph& h, const VertexPartition& k_frame, const ClassGraph& g, const Gadget& w,
                           const VertexSet& avoid);

// Searches for a G-gadget avoiding `avoid`, trying pieces in lowest-index order and
// backtracking across edges. Throws BudgetExceeded after `node_budget` candidate pieces.
std::optional<Gadget> find_gadget(const Hypergraph& h, const VertexPartition& k_frame, const ClassGraph& g,
                                  const VertexSet& avoid, std::uint64_t node_budget = 10'000'000);

// Spanning tight path of H[W_ij] with start type στ and end type (ij)σ; requires σ(1) ∈ {i, j}.
// Uses the witness pattern when present, otherwise searches.
std::optional<std::vector<Vertex>> gadget_path(const Hypergraph& h, const VertexPartition& k_frame,
                                               const ClassPair& ij, const GadgetPiece& piece, const Perm& sigma);

struct ExtensionResult {
  TightPath path;
  Gadget leftover;
  std::vector<std::size_t> consumption;  // consumption[i-1] = |V_i ∩ (V(P') \ V(P))|
  std::vector<Vertex> new_outside;       // V(P') \ (V(P) ∪ V(K)), sorted
};

// σ must be a single cycle containing end_type(P)(1); it is rotated so that i_r = end_type(P)(1).
ExtensionResult extend_by_cycle_perm(const Hypergraph& h, const TightPath& p, const Perm& sigma, const Gadget& w);

ExtensionResult extend_to_sigma(const Hypergraph& h, const TightPath& p, const Perm& sigma, const Gadget& w);

// G(σ, π, r) for start type σ, end type π and r = s_extra mod k.
ClassGraph closing_graph(const Perm& start, const Perm& end, int r);

struct ClosingResult {
  std::vector<Vertex> sequence;  // P followed by the new vertices
  TightCycle cycle;
  ClassGraph used_graph;
  Gadget leftover;
  std::vector<std::size_t> consumption;
  std::vector<Vertex> new_outside;
};

ClosingResult close_cycle(const Hypergraph& h, const TightPath& p, std::size_t s_extra, const Gadget& w);

}  // namespace tightcycle
