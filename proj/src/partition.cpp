#include "tightcycle/partition.hpp"

#include <algorithm>
#include <string>

#include "tightcycle/errors.hpp"

namespace tightcycle {

VertexPartition::VertexPartition(std::size_t universe, std::vector<std::vector<Vertex>> classes)
    : classes_(std::move(classes)), class_of_(universe, 0) {
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    std::sort(classes_[c].begin(), classes_[c].end());
    for (Vertex v : classes_[c]) {
      if (v >= universe) throw InputError("partition vertex " + std::to_string(v) + " out of range");
      if (class_of_[v] != 0) throw InputError("partition classes overlap at vertex " + std::to_string(v));
      class_of_[v] = static_cast<int>(c + 1);
    }
  }
}

VertexSet VertexPartition::members() const {
  VertexSet s(universe());
  for (const auto& c : classes_)
    for (Vertex v : c) s.insert(v);
  return s;
}

VertexPartition VertexPartition::relabeled(const Perm& p) const {
  if (p.k() != num_classes()) throw InputError("relabeling permutation does not match the number of classes");
  std::vector<std::vector<Vertex>> out(classes_.size());
  for (int c = 1; c <= num_classes(); ++c) out[static_cast<std::size_t>(c - 1)] = at(p(c));
  return VertexPartition(universe(), std::move(out));
}

}  // namespace tightcycle
