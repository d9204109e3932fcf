#include "tightcycle/cycle.hpp"

#include <algorithm>

namespace tightcycle {

namespace {

bool distinct_in_range(const Hypergraph& h, std::span<const Vertex> seq) {
  VertexSet seen(h.n());
  for (Vertex v : seq) {
    if (v >= h.n() || seen.contains(v)) return false;
    seen.insert(v);
  }
  return true;
}

bool window_is_edge(const Hypergraph& h, std::span<const Vertex> seq, std::size_t start) {
  const auto k = static_cast<std::size_t>(h.k());
  Vertex buf[kMaxUniformity];
  for (std::size_t i = 0; i < k; ++i) buf[i] = seq[(start + i) % seq.size()];
  std::sort(buf, buf + k);
  return h.has_sorted_edge(std::span<const Vertex>(buf, k));
}

}  // namespace

TightCycle canonical_cycle(std::span<const Vertex> sequence) {
  TightCycle c;
  if (sequence.empty()) return c;
  const auto n = sequence.size();
  const auto first = static_cast<std::size_t>(std::min_element(sequence.begin(), sequence.end()) - sequence.begin());
  const bool forward = n < 3 || sequence[(first + 1) % n] < sequence[(first + n - 1) % n];
  c.vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    c.vertices.push_back(forward ? sequence[(first + i) % n] : sequence[(first + n - i) % n]);
  return c;
}

bool is_tight_path(const Hypergraph& h, std::span<const Vertex> sequence) {
  if (!distinct_in_range(h, sequence)) return false;
  const auto k = static_cast<std::size_t>(h.k());
  for (std::size_t start = 0; start + k <= sequence.size(); ++start)
    if (!window_is_edge(h, sequence, start)) return false;
  return true;
}

bool is_tight_cycle(const Hypergraph& h, std::span<const Vertex> sequence) {
  if (sequence.size() <= static_cast<std::size_t>(h.k())) return false;
  if (!distinct_in_range(h, sequence)) return false;
  for (std::size_t start = 0; start < sequence.size(); ++start)
    if (!window_is_edge(h, sequence, start)) return false;
  return true;
}

}  // namespace tightcycle
