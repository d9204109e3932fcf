#pragma once

#include <vector>

#include "tightcycle/perm.hpp"
#include "tightcycle/vertex_set.hpp"

namespace tightcycle {

// Ordered disjoint classes V_1..V_s over a universe of n vertices. Class indices are
// 1-based; vertices outside every class report class 0.
class VertexPartition {
 public:
  VertexPartition() = default;
  VertexPartition(std::size_t universe, std::vector<std::vector<Vertex>> classes);

  int num_classes() const { return static_cast<int>(classes_.size()); }
  std::size_t universe() const { return class_of_.size(); }
  const std::vector<Vertex>& at(int i) const { return classes_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<std::vector<Vertex>>& classes() const { return classes_; }
  int class_of(Vertex v) const { return v < class_of_.size() ? class_of_[v] : 0; }
  VertexSet members() const;

  // Class c of the result is class p(c) of this partition.
  VertexPartition relabeled(const Perm& p) const;

 private:
  std::vector<std::vector<Vertex>> classes_;
  std::vector<int> class_of_;
};

}  // namespace tightcycle
