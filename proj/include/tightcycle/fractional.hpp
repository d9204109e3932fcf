#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tightcycle/constructions.hpp"
#include "tightcycle/search.hpp"

namespace tightcycle {

// The parts of a tile family that the weight system needs.
struct FracParams {
  int k = 0;
  int s = 0;
  int ell = 0;
  int big_m = 0;
  std::vector<int> a;  // core weights a_1..a_k
  ClassGraph g_s;

  static FracParams of(const TileFamily& fam);
};

// A copy of F* = F(single edge, G_s): core x_1..x_k, one pendant per edge of G_s (in the
// order of g_s.edges()). Pendant y for edge ij spans edges with core \ {x_i} and core \ {x_j}.
struct FStarCopy {
  std::vector<Vertex> core;
  std::vector<Vertex> pendants;

  friend bool operator==(const FStarCopy&, const FStarCopy&) = default;
};

// α_F(v): a_i on core vertex x_i, 1 on pendants, 0 elsewhere.
long alpha(const FracParams& p, const FStarCopy& f, Vertex v);
bool is_fstar_copy(const Hypergraph& h, const FracParams& p, const FStarCopy& f);

struct FractionalTiling {
  FracParams params;
  std::size_t n = 0;
  std::vector<std::pair<FStarCopy, mpq_class>> fweights;
  std::vector<std::pair<Edge, mpq_class>> eweights;  // edges sorted

  mpq_class f_total() const;
  mpq_class e_total() const;
};

FractionalTiling zero_tiling(const FracParams& p, std::size_t n);

// ω*(v) for every vertex.
std::vector<mpq_class> vertex_loads(const FractionalTiling& w);
mpq_class vertex_weight(const FractionalTiling& w, Vertex v);
mpq_class phi(const FractionalTiling& w);
// Smallest nonzero ω*(J)α_J(v); nullopt (read as +∞) for the all-zero tiling.
std::optional<mpq_class> min_weight(const FractionalTiling& w);
VertexSet saturated(const FractionalTiling& w);
VertexSet uncovered(const FractionalTiling& w);

// Weights in [0, 1], loads at most 1, every copy and edge present in h.
bool is_valid(const Hypergraph& h, const FractionalTiling& w, std::string* why = nullptr);

// Integral counterparts for {F_s, E_s}-tilings.
VertexSet saturated(const Tiling& t, const TileFamily& fam, std::size_t n);
VertexSet uncovered(const Tiling& t, std::size_t n);

// Every transversal of each F_s copy becomes an F* copy of weight 1/Πa_i; every edge of
// each E_s copy gets weight M^{-k}. Throws InputError on C pieces or an invalid tiling.
FractionalTiling from_integral(const Hypergraph& h, const TileFamily& fam, const Tiling& t);

struct ConversionReport {
  bool phi_equal = false;        // (i)
  bool f_count_equal = false;    // (ii)
  bool e_count_equal = false;    // (iii)
  bool sets_preserved = false;   // (iv) saturated and uncovered sets agree
  bool f_quantized = false;      // (v) ω*(F*) ∈ {0, 1/Πa_i}
  bool e_quantized = false;      // (vi) ω*(e) ∈ {0, M^{-k}}, and M^{-k} on every E_s edge
  bool min_weight_floor = false; // (vii) ω*_min >= s^{-k}
  bool loads_integral = false;   // (viii) ω*(v) ∈ {0, 1}
  bool valid = false;

  bool ok() const {
    return phi_equal && f_count_equal && e_count_equal && sets_preserved && f_quantized && e_quantized &&
           min_weight_floor && loads_integral && valid;
  }
};

ConversionReport check_conversion(const Hypergraph& h, const TileFamily& fam, const Tiling& t,
                                  const FractionalTiling& w);

struct PackingReport {
  bool capacity = false;       // s Σω*(F*) + k M Σω*(e) <= n
  bool saturated_bound = false;  // |S(ω*)| <= ell n / s
  bool conservation = false;   // Σ_v ω*(v) = s Σω*(F*) + k M Σω*(e)
  bool pair_applicable = false;  // |S'| > n/s was supplied
  std::optional<FStarCopy> pair_witness;  // weighted F* with two pendants in S'
};

// Returns the packing inequalities; with s_prime ⊆ S(ω*) and |S'| > n/s also finds a
// weighted F* having two pendants in S'.
PackingReport check_packing(const FractionalTiling& w, const std::optional<VertexSet>& s_prime = std::nullopt);

// All F* copies of h, one per LP column: copies with the same core weights and the same
// pendant set are merged.
std::vector<FStarCopy> enumerate_fstar(const Hypergraph& h, const FracParams& p,
                                       std::uint64_t budget = kDefaultNodeBudget);

struct PhiStarResult {
  FractionalTiling tiling;
  mpq_class phi_star;
  bool optimal = false;  // false: budget ran out, tiling is the best feasible one found
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::uint64_t lp_solves = 0;
  std::uint64_t pivots = 0;
};

// Exact minimum of φ over weighted fractional tilings with ω*_min >= c (zero tiling
// admitted). The floor makes each variable semicontinuous, handled by branching on
// "x = 0" versus "x >= c / min α".
PhiStarResult solve_phi_star(const Hypergraph& h, const TileFamily& fam, const mpq_class& c,
                             std::uint64_t budget = kDefaultNodeBudget);

}  // namespace tightcycle
