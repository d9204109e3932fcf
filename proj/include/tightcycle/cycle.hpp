#pragma once

#include <span>
#include <vector>

#include "tightcycle/hypergraph.hpp"

namespace tightcycle {

// Tight cycle stored rotation-canonically: least vertex first, then the direction whose
// second vertex is smaller.
struct TightCycle {
  std::vector<Vertex> vertices;
  std::size_t length() const { return vertices.size(); }
  friend bool operator==(const TightCycle&, const TightCycle&) = default;
  friend auto operator<=>(const TightCycle&, const TightCycle&) = default;
};

TightCycle canonical_cycle(std::span<const Vertex> sequence);

// Distinct vertices and every k consecutive vertices form an edge.
bool is_tight_path(const Hypergraph& h, std::span<const Vertex> sequence);

// Distinct vertices, length > k, and every cyclic window of k vertices is an edge.
bool is_tight_cycle(const Hypergraph& h, std::span<const Vertex> sequence);

}  // namespace tightcycle
