#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tightcycle/constructions.hpp"
#include "tightcycle/hypergraph.hpp"

namespace tightcycle {

// Portable helpers over mt19937_64: the standard distributions are implementation-defined,
// these are not, so seeded runs replay bit-exactly everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  std::vector<Vertex> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// Each k-subset of {0..n-1} is an edge with probability num/den.
Hypergraph random_hypergraph(int k, std::size_t n, std::uint64_t num, std::uint64_t den, SeededRng& rng);

// Copies of F_s and E_s on random disjoint vertex sets, plus random noise edges.
struct PlantedInstance {
  Hypergraph graph;
  std::vector<std::vector<Vertex>> f_images;  // pattern vertex p of F_s sits at f_images[i][p]
  std::vector<std::vector<Vertex>> e_images;
};
PlantedInstance planted_instance(const TileFamily& fam, std::size_t n, int f_count, int e_count,
                                 std::uint64_t noise_num, std::uint64_t noise_den, SeededRng& rng);

}  // namespace tightcycle
