#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tightcycle/hypergraph.hpp"
#include "tightcycle/partition.hpp"
#include "tightcycle/perm.hpp"

namespace tightcycle {

// A hypergraph together with ordered classes V_1..V_s. Gadget hosts additionally carry
// their pendant vertices and the class-graph edge each pendant was attached for.
struct PartitionedHost {
  Hypergraph graph;
  VertexPartition classes;
  std::vector<Vertex> pendants;
  std::vector<std::pair<int, int>> pendant_edges;
};

// K^k(sizes[0], ..., sizes[s-1]); class i occupies a contiguous block of vertex ids.
PartitionedHost complete_partite(int k, const std::vector<std::size_t>& sizes);

// Parity construction: A = {0..a_size-1}, B = the next b_size vertices, and e is an
// edge iff |e ∩ A| has the opposite parity to k.
Hypergraph h0(int k, std::size_t a_size, std::size_t b_size);

struct Admissibility {
  bool admissible = false;
  int d = 1;  // gcd(k, s)
};

// Requires 2 <= k < s.
Admissibility admissible(int k, int s);

struct BarrierGraph {
  Hypergraph graph;
  std::vector<Vertex> a, b, t;  // laid out as A, then B, then T
  bool degenerate = false;      // the |T| formula gave a non-positive value; T is empty
};

// Tiling barrier on n vertices: parity rule on A ∪ B, plus every k-set meeting T.
// |T| = n/s - 1 for even k and floor(nk / (2s(k-1) + k)) - 1 for odd k.
BarrierGraph tiling_barrier(int k, int s, std::size_t n);

// Adds one pendant w per edge ab of g, with every transversal k-set of the form
// {w} ∪ (one vertex from each class except a) or (... except b).
PartitionedHost gadget_host(const PartitionedHost& host, const ClassGraph& g);

// The two tile shapes used by the {F_s, E_s}-tiling machinery, derived from a
// constructive closing run on an id-typed edge.
struct TileFamily {
  int k = 0;
  int s = 0;
  int r = 0;              // s mod k
  ClassGraph g_s;         // G_{τ^{-r}}
  std::vector<int> a;     // a[i-1] = |V(C) ∩ V_i| of the constructed spanning cycle
  int ell = 0;            // |E(G_s)|
  int big_m = 0;          // max a_i
  int small_m = 0;        // min a_i
  PartitionedHost f_s;    // F(K^k(a), G_s)
  PartitionedHost e_s;    // K^k(M_s)
  std::vector<Vertex> spanning_cycle;  // a tight Hamilton cycle of f_s.graph
  bool ratio_bound_applies = false;    // s >= 5k^2, where min a / max a >= 14/15 is guaranteed
};

// Requires k >= 3, s >= 2k^2 and s not divisible by k.
TileFamily tile_family(int k, int s);

}  // namespace tightcycle
