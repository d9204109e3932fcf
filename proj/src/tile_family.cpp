#include <algorithm>
#include <map>
#include <string>

#include "tightcycle/constructions.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/paths.hpp"

namespace tightcycle {

TileFamily tile_family(int k, int s) {
  if (k < 3) throw InputError("tile family needs k >= 3");
  if (s % k == 0) throw InputError("tile family needs s not divisible by k");
  if (s < 2 * k * k) throw InputError("tile family needs s >= 2k^2 = " + std::to_string(2 * k * k));
  TileFamily out;
  out.k = k;
  out.s = s;
  out.r = s % k;
  out.g_s = sigma_stats(tau_power(k, -out.r)).g_sigma;
  out.ell = static_cast<int>(out.g_s.size());

  // Run the closing construction on an id-typed edge inside a roomy gadget host.
  const auto extra = static_cast<std::size_t>(s - k);
  const std::size_t big = extra / static_cast<std::size_t>(k) + 2 + 2 * out.g_s.size();
  const PartitionedHost frame_host = complete_partite(k, std::vector<std::size_t>(static_cast<std::size_t>(k), big));
  const PartitionedHost host = gadget_host(frame_host, out.g_s);
  TightPath edge;
  edge.frame = host.classes;
  for (int c = 1; c <= k; ++c) edge.vertices.push_back(host.classes.at(c).front());
  const auto gadget = find_gadget(host.graph, host.classes, out.g_s, VertexSet::of(host.graph.n(), edge.vertices));
  if (!gadget) throw ExtensionError("no gadget found in the tile-family host");
  const ClosingResult closed = close_cycle(host.graph, edge, extra, *gadget);

  out.a.assign(static_cast<std::size_t>(k), 1);
  for (int c = 1; c <= k; ++c) out.a[static_cast<std::size_t>(c - 1)] += static_cast<int>(closed.consumption[static_cast<std::size_t>(c - 1)]);
  out.big_m = *std::max_element(out.a.begin(), out.a.end());
  out.small_m = *std::min_element(out.a.begin(), out.a.end());
  out.ratio_bound_applies = s >= 5 * k * k;

  std::vector<std::size_t> sizes(out.a.begin(), out.a.end());
  out.f_s = gadget_host(complete_partite(k, sizes), out.g_s);
  out.e_s = complete_partite(k, std::vector<std::size_t>(static_cast<std::size_t>(k), static_cast<std::size_t>(out.big_m)));

  // Transfer the cycle: the j-th used vertex of class i goes to the j-th vertex of class i in F_s.
  std::map<Vertex, Vertex> image;
  for (int c = 1; c <= k; ++c) {
    std::vector<Vertex> used;
    for (Vertex v : closed.sequence)
      if (host.classes.class_of(v) == c) used.push_back(v);
    std::sort(used.begin(), used.end());
    const auto& target = out.f_s.classes.at(c);
    for (std::size_t j = 0; j < used.size(); ++j) image[used[j]] = target[j];
  }
  for (std::size_t e = 0; e < host.pendants.size(); ++e) image[host.pendants[e]] = out.f_s.pendants[e];
  for (Vertex v : closed.sequence) out.spanning_cycle.push_back(image.at(v));
  if (out.spanning_cycle.size() != out.f_s.graph.n() || !is_tight_cycle(out.f_s.graph, out.spanning_cycle))
    throw ExtensionError("transferred cycle is not a spanning tight cycle of F_s");
  return out;
}

}  // namespace tightcycle
