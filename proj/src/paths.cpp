#include "tightcycle/paths.hpp"

#include <algorithm>
#include <functional>
#include <bit>
#include <set>
#include <unordered_set>
#include <string>

#include "tightcycle/errors.hpp"

namespace tightcycle {

namespace {

std::string pair_name(const ClassPair& ij) {
  return "W_{" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "}";
}

// Permutation from the classes of k-1 consecutive vertices; `free_slot` receives the unused class.
std::optional<Perm> type_of(const VertexPartition& frame, std::span<const Vertex> run, int first_slot, int free_slot) {
  const int k = frame.num_classes();
  std::vector<int> image(static_cast<std::size_t>(k), 0);
  std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
  for (std::size_t p = 0; p < run.size(); ++p) {
    const int c = frame.class_of(run[p]);
    if (c == 0 || seen[static_cast<std::size_t>(c)]) return std::nullopt;
    seen[static_cast<std::size_t>(c)] = true;
    image[static_cast<std::size_t>(first_slot - 1) + p] = c;
  }
  for (int c = 1; c <= k; ++c)
    if (!seen[static_cast<std::size_t>(c)]) image[static_cast<std::size_t>(free_slot - 1)] = c;
  return Perm(std::move(image));
}

std::optional<Perm> end_type_of(const VertexPartition& frame, const std::vector<Vertex>& seq) {
  const auto k = static_cast<std::size_t>(frame.num_classes());
  if (k < 2 || seq.size() < k - 1) return std::nullopt;
  return type_of(frame, std::span<const Vertex>(seq).last(k - 1), 2, 1);
}

bool window_ok(const Hypergraph& h, const std::vector<Vertex>& seq, std::size_t end) {
  const auto k = static_cast<std::size_t>(h.k());
  Vertex buf[kMaxUniformity];
  for (std::size_t i = 0; i < k; ++i) buf[i] = seq[end + 1 - k + i];
  std::sort(buf, buf + k);
  return h.has_sorted_edge(std::span<const Vertex>(buf, k));
}

// Spanning tight path of H[members] whose first k-1 vertices lie in start_classes and
// whose last k-1 vertices lie in end_classes, position by position.
std::optional<std::vector<Vertex>> typed_spanning_path(const Hypergraph& h, const VertexPartition& frame,
                                                       const std::vector<Vertex>& members,
                                                       const std::vector<int>& start_classes,
                                                       const std::vector<int>& end_classes) {
  const std::size_t len = members.size();
  const auto k = static_cast<std::size_t>(h.k());
  std::vector<int> required(len, 0);
  for (std::size_t p = 0; p < start_classes.size() && p < len; ++p) required[p] = start_classes[p];
  for (std::size_t q = 0; q < end_classes.size(); ++q) {
    if (len + q < end_classes.size()) continue;
    const std::size_t pos = len - end_classes.size() + q;
    if (required[pos] != 0 && required[pos] != end_classes[q]) return std::nullopt;
    required[pos] = end_classes[q];
  }
  std::vector<Vertex> seq;
  std::vector<bool> used(len, false);
  std::function<bool()> dfs = [&]() -> bool {
    const std::size_t pos = seq.size();
    if (pos == len) return true;
    for (std::size_t idx = 0; idx < len; ++idx) {
      if (used[idx]) continue;
      const Vertex v = members[idx];
      if (required[pos] != 0 && frame.class_of(v) != required[pos]) continue;
      seq.push_back(v);
      if (pos + 1 < k || window_ok(h, seq, pos)) {
        used[idx] = true;
        if (dfs()) return true;
        used[idx] = false;
      }
      seq.pop_back();
    }
    return false;
  };
  if (dfs()) return seq;
  return std::nullopt;
}

std::vector<int> start_classes_of(const Perm& start) {
  std::vector<int> out;
  for (int i = 1; i < start.k(); ++i) out.push_back(start(i));
  return out;
}

std::vector<int> end_classes_of(const Perm& end) {
  std::vector<int> out;
  for (int i = 2; i <= end.k(); ++i) out.push_back(end(i));
  return out;
}

std::vector<Vertex> pattern_path(const ClassPair& ij, const GadgetPiece& piece, const Perm& sigma) {
  const GadgetWitness& w = *piece.witness;
  const int a = sigma(1);
  const int b = a == ij.first ? ij.second : ij.first;
  const Vertex star_a = a == ij.first ? w.star_i : w.star_j;
  const Vertex star_b = a == ij.first ? w.star_j : w.star_i;
  std::vector<Vertex> seq;
  for (int p = 2; p <= sigma.k(); ++p) seq.push_back(sigma(p) == b ? star_b : w.pairs.at(sigma(p)).first);
  seq.push_back(piece.outside);
  for (int p = 2; p <= sigma.k(); ++p) seq.push_back(sigma(p) == b ? star_a : w.pairs.at(sigma(p)).second);
  return seq;
}

Perm pair_transposition(int k, const ClassPair& ij) { return transposition(k, ij.first, ij.second); }

// Mutable state shared by the extension routines.
struct Builder {
  const Hypergraph& h;
  const VertexPartition& frame;
  std::vector<Vertex> seq;
  VertexSet in_path;
  Gadget gadget;
  VertexSet reserved;

  Builder(const Hypergraph& host, const VertexPartition& f, const std::vector<Vertex>& start, Gadget g)
      : h(host), frame(f), seq(start), in_path(VertexSet::of(host.n(), start)), gadget(std::move(g)),
        reserved(host.n()) {
    for (Vertex v : gadget.vertices()) reserved.insert(v);
  }

  Perm end() const {
    auto t = end_type_of(frame, seq);
    if (!t) throw ExtensionError("path end is not typed against the frame");
    return *t;
  }

  void append(Vertex v) {
    seq.push_back(v);
    in_path.insert(v);
    if (seq.size() >= static_cast<std::size_t>(h.k()) && !window_ok(h, seq, seq.size() - 1))
      throw ExtensionError("window ending at vertex " + std::to_string(v) + " is not an edge");
  }

  void simple_step() {
    const int c = end()(1);
    for (Vertex v : frame.at(c)) {
      if (v >= h.n() || in_path.contains(v) || reserved.contains(v)) continue;
      seq.push_back(v);
      const bool ok = seq.size() < static_cast<std::size_t>(h.k()) || window_ok(h, seq, seq.size() - 1);
      seq.pop_back();
      if (ok) {
        append(v);
        return;
      }
    }
    throw ResourceExhausted("no free vertex left in class V_" + std::to_string(c) + " for a simple extension");
  }

  void gadget_step(const ClassPair& ij) {
    auto it = gadget.pieces.find(ij);
    if (it == gadget.pieces.end()) throw PreconditionError("gadget has no piece " + pair_name(ij));
    const Perm current = end();
    simple_step();
    auto piece_path = gadget_path(h, frame, ij, it->second, current);
    if (!piece_path) throw ExtensionError("piece " + pair_name(ij) + " has no spanning path of the required types");
    for (Vertex v : it->second.members) reserved.erase(v);
    for (Vertex v : *piece_path) {
      if (in_path.contains(v)) throw ExtensionError("piece " + pair_name(ij) + " meets the current path");
      append(v);
    }
    gadget.pieces.erase(it);
  }

  // σ = (i_1 ... i_r) with i_r = end()(1).
  void cycle_steps(const std::vector<int>& rotated) {
    for (std::size_t j = rotated.size() - 1; j-- > 0;) {
      const int a = rotated[j];
      const int b = rotated[j + 1];
      gadget_step({std::min(a, b), std::max(a, b)});
    }
  }

  void sigma_steps(const Perm& sigma) {
    int m_prev = 1;
    for (const auto& cycle : decompose(sigma).cycles) {
      const int m = cycle.back();
      for (int i = m_prev; i < m; ++i) simple_step();
      cycle_steps(cycle);
      m_prev = m;
    }
  }

  ExtensionResult result(std::size_t prefix) const {
    ExtensionResult out;
    out.path.vertices = seq;
    out.path.frame = frame;
    out.leftover = gadget;
    out.consumption.assign(static_cast<std::size_t>(frame.num_classes()), 0);
    for (std::size_t p = prefix; p < seq.size(); ++p) {
      const int c = frame.class_of(seq[p]);
      if (c == 0)
        out.new_outside.push_back(seq[p]);
      else
        ++out.consumption[static_cast<std::size_t>(c - 1)];
    }
    std::sort(out.new_outside.begin(), out.new_outside.end());
    return out;
  }
};

void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

void check_gadget_avoids(const Gadget& w, const VertexSet& path) {
  for (const auto& [ij, piece] : w.pieces)
    for (Vertex v : piece.members)
      require(!path.contains(v), "gadget piece " + pair_name(ij) + " meets the path at vertex " + std::to_string(v));
}

std::size_t free_in_class(const VertexPartition& frame, int c, const VertexSet& used) {
  std::size_t count = 0;
  for (Vertex v : frame.at(c)) count += used.contains(v) ? 0 : 1;
  return count;
}

std::vector<Vertex> outside_of(const Gadget& w, const ClassGraph& g) {
  std::vector<Vertex> out;
  for (auto ij : g.edges()) out.push_back(w.pieces.at(ij).outside);
  std::sort(out.begin(), out.end());
  return out;
}

void ensure(bool condition, const std::string& message) {
  if (!condition) throw ExtensionError("post-condition failed: " + message);
}

Gadget relabel_gadget(const Gadget& w, const Perm& p) {
  Gadget out;
  for (const auto& [ij, piece] : w.pieces) {
    const int a = p(ij.first);
    const int b = p(ij.second);
    GadgetPiece moved = piece;
    if (piece.witness) {
      GadgetWitness wit;
      wit.star_i = a < b ? piece.witness->star_i : piece.witness->star_j;
      wit.star_j = a < b ? piece.witness->star_j : piece.witness->star_i;
      for (const auto& [r, xy] : piece.witness->pairs) wit.pairs[p(r)] = xy;
      moved.witness = wit;
    }
    out.pieces[{std::min(a, b), std::max(a, b)}] = std::move(moved);
  }
  return out;
}

}  // namespace

std::optional<Perm> end_type(const TightPath& p) { return end_type_of(p.frame, p.vertices); }

std::optional<Perm> start_type(const TightPath& p) {
  const auto k = static_cast<std::size_t>(p.frame.num_classes());
  if (k < 2 || p.vertices.size() < k - 1) return std::nullopt;
  return type_of(p.frame, std::span<const Vertex>(p.vertices).first(k - 1), 1, static_cast<int>(k));
}

void validate_path(const Hypergraph& h, const TightPath& p) {
  if (p.frame.num_classes() != h.k())
    throw InputError("path frame has " + std::to_string(p.frame.num_classes()) + " classes, expected k = " +
                     std::to_string(h.k()));
  if (p.vertices.size() + 1 < static_cast<std::size_t>(h.k())) throw InputError("path has fewer than k-1 vertices");
  if (!is_tight_path(h, p.vertices)) throw InputError("vertex sequence is not a tight path of the host");
}

TightPath simple_extend(const Hypergraph& h, const TightPath& p, Vertex x) {
  const auto pi = end_type(p);
  if (!pi) throw ExtensionError("path end is not typed against the frame");
  if (p.frame.class_of(x) != (*pi)(1))
    throw ExtensionError("vertex " + std::to_string(x) + " is not in class V_" + std::to_string((*pi)(1)));
  if (std::find(p.vertices.begin(), p.vertices.end(), x) != p.vertices.end())
    throw ExtensionError("vertex " + std::to_string(x) + " is already on the path");
  if (x >= h.n()) throw ExtensionError("vertex " + std::to_string(x) + " is outside the host");
  TightPath out = p;
  out.vertices.push_back(x);
  if (out.vertices.size() >= static_cast<std::size_t>(h.k()) && !window_ok(h, out.vertices, out.vertices.size() - 1))
    throw ExtensionError("the last k-1 path vertices plus " + std::to_string(x) + " do not form an edge");
  return out;
}

ClassGraph Gadget::graph(int k) const {
  ClassGraph g(k);
  for (const auto& [ij, piece] : pieces) g.add_edge(ij.first, ij.second);
  return g;
}

std::vector<Vertex> Gadget::vertices() const {
  std::vector<Vertex> out;
  for (const auto& [ij, piece] : pieces) out.insert(out.end(), piece.members.begin(), piece.members.end());
  std::sort(out.begin(), out.end());
  return out;
}

GadgetReport verify_gadget(const Hypergraph& h, const VertexPartition& k_frame, const ClassGraph& g, const Gadget& w,
                           const VertexSet& avoid) {
  GadgetReport report;
  const int k = h.k();
  for (auto ij : g.edges()) {
    if (!w.pieces.contains(ij)) {
      report.covers_graph = false;
      report.violations.push_back("missing piece " + pair_name(ij));
    }
  }
  std::map<Vertex, ClassPair> owner;
  for (const auto& [ij, piece] : w.pieces) {
    const std::string name = pair_name(ij);
    if (ij.first < 1 || ij.second > k || ij.first >= ij.second) {
      report.w2 = false;
      report.violations.push_back("(W2) " + name + " is not indexed by a pair of classes");
      continue;
    }
    std::set<Vertex> distinct(piece.members.begin(), piece.members.end());
    if (piece.members.size() != static_cast<std::size_t>(2 * k - 1) || distinct.size() != piece.members.size()) {
      report.w1 = false;
      report.violations.push_back("(W1) " + name + " has " + std::to_string(distinct.size()) + " vertices, expected " +
                                  std::to_string(2 * k - 1));
    }
    std::vector<int> per_class(static_cast<std::size_t>(k) + 1, 0);
    std::vector<Vertex> outside;
    bool in_range = true;
    for (Vertex v : distinct) {
      if (v >= h.n()) in_range = false;
      const int c = k_frame.class_of(v);
      if (c == 0) outside.push_back(v);
      ++per_class[static_cast<std::size_t>(c)];
      if (avoid.contains(v)) {
        report.w2 = false;
        report.violations.push_back("(W2) " + name + " meets the avoided set at vertex " + std::to_string(v));
      }
      auto [it, inserted] = owner.emplace(v, ij);
      if (!inserted) {
        report.w4 = false;
        report.violations.push_back("(W4) " + name + " and " + pair_name(it->second) + " share vertex " +
                                    std::to_string(v));
      }
    }
    if (!in_range) {
      report.w1 = false;
      report.violations.push_back("(W1) " + name + " has a vertex outside the host");
      continue;
    }
    if (outside.size() != 1 || outside.front() != piece.outside) {
      report.w2 = false;
      report.violations.push_back("(W2) " + name + " must have exactly one vertex outside K, recorded as its outside vertex");
    }
    for (int c = 1; c <= k; ++c) {
      const int want = (c == ij.first || c == ij.second) ? 1 : 2;
      if (per_class[static_cast<std::size_t>(c)] != want) {
        report.w2 = false;
        report.violations.push_back("(W2) " + name + " has " + std::to_string(per_class[static_cast<std::size_t>(c)]) +
                                    " vertices in V_" + std::to_string(c) + ", expected " + std::to_string(want));
      }
    }
    const Perm swap = pair_transposition(k, ij);
    const Perm t = tau(k);
    std::vector<Vertex> members(distinct.begin(), distinct.end());
    for (const Perm& sigma : all_perms(k)) {
      if (sigma(1) != ij.first && sigma(1) != ij.second) continue;
      if (!typed_spanning_path(h, k_frame, members, start_classes_of(sigma * t), end_classes_of(swap * sigma))) {
        report.w3 = false;
        report.violations.push_back("(W3) " + name + " has no spanning tight path for sigma = " + format_cycles(sigma));
      }
    }
  }
  return report;
}

std::optional<Gadget> find_gadget(const Hypergraph& h, const VertexPartition& k_frame, const ClassGraph& g,
                                  const VertexSet& avoid, std::uint64_t node_budget) {
  const int k = h.k();
  if (k_frame.num_classes() != k) throw InputError("gadget search needs a frame with k classes");
  if (g.k() != k) throw InputError("class graph must live on [k]");
  const auto& edges = g.edges();
  VertexSet used(h.n());
  for (Vertex v = 0; v < h.n(); ++v)
    if (avoid.contains(v)) used.insert(v);
  VertexSet in_frame(h.n());
  for (const auto& c : k_frame.classes())
    for (Vertex v : c)
      if (v < h.n()) in_frame.insert(v);
  std::uint64_t nodes = 0;
  auto tick = [&]() {
    if (++nodes > node_budget) throw BudgetExceeded("gadget search exceeded its node budget");
  };

  // Proper subsets (size <= k-2) of transversal link edges of the current outside vertex
  // that miss class i or class j, grouped by the missing class.
  std::vector<std::unordered_set<SetKey, SetKeyHash>> shadow(static_cast<std::size_t>(k) + 1);
  auto missing_class = [&](const Edge& e, Vertex w) {
    int missing = k * (k + 1) / 2;
    std::uint32_t seen = 0;
    for (Vertex v : e) {
      if (v == w) continue;
      const int c = k_frame.class_of(v);
      if (c == 0 || ((seen >> c) & 1U)) return 0;
      seen |= 1U << c;
      missing -= c;
    }
    return missing;
  };
  // Returns false when w has no transversal link edge missing i or none missing j.
  auto build_shadow = [&](Vertex w, const ClassPair& ij) {
    bool has_i = false;
    bool has_j = false;
    for (std::uint32_t id : h.incident_edges(w)) {
      const int missing = missing_class(h.edges()[id], w);
      has_i = has_i || missing == ij.first;
      has_j = has_j || missing == ij.second;
      if (has_i && has_j) break;
    }
    if (!has_i || !has_j) return false;
    for (auto& level : shadow) level.clear();
    const auto kk = static_cast<std::size_t>(k);
    if (kk < 3) return true;
    for (std::uint32_t id : h.incident_edges(w)) {
      const auto& e = h.edges()[id];
      const int missing = missing_class(e, w);
      if (missing != ij.first && missing != ij.second) continue;
      std::vector<Vertex> rest;
      for (Vertex v : e)
        if (v != w) rest.push_back(v);
      for (std::uint32_t mask = 1; mask < (1U << rest.size()); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) + 2 > kk) continue;
        std::vector<Vertex> sub;
        for (std::size_t b = 0; b < rest.size(); ++b)
          if ((mask >> b) & 1U) sub.push_back(rest[b]);
        shadow[static_cast<std::size_t>(missing)].insert(pack_sorted(sub));
      }
    }
    return true;
  };
  auto in_shadow = [&](std::vector<Vertex> s, int missing) {
    if (s.size() + 2 > static_cast<std::size_t>(k)) return true;
    std::sort(s.begin(), s.end());
    return shadow[static_cast<std::size_t>(missing)].contains(pack_sorted(s));
  };

  Gadget result;
  std::size_t edge_index = 0;
  std::function<bool(std::size_t)> solve_edge;

  // Tries every pair choice for rest[depth..]; the last class is resolved by intersecting
  // completion sets of all partial transversals.
  std::function<bool(std::size_t, const ClassPair&, Vertex, Vertex, Vertex, const std::vector<int>&,
                     std::vector<std::pair<Vertex, Vertex>>&)>
      choose_pairs = [&](std::size_t depth, const ClassPair& ij, Vertex w, Vertex si, Vertex sj,
                         const std::vector<int>& rest, std::vector<std::pair<Vertex, Vertex>>& chosen) -> bool {
    auto accept = [&]() -> bool {
      GadgetPiece piece;
      piece.outside = w;
      GadgetWitness wit{si, sj, {}};
      piece.members = {w, si, sj};
      for (std::size_t q = 0; q < rest.size(); ++q) {
        wit.pairs[rest[q]] = chosen[q];
        piece.members.push_back(chosen[q].first);
        piece.members.push_back(chosen[q].second);
      }
      std::sort(piece.members.begin(), piece.members.end());
      piece.witness = wit;
      for (Vertex v : piece.members) used.insert(v);
      result.pieces[ij] = piece;
      const std::size_t here = edge_index;
      if (solve_edge(here + 1)) return true;
      edge_index = here;
      result.pieces.erase(ij);
      for (Vertex v : piece.members) used.erase(v);
      return false;
    };

    // All partial transversals {w, star} ∪ (one vertex of each chosen pair), as sorted lists.
    auto partials = [&]() {
      std::vector<std::vector<Vertex>> sets;
      const std::size_t combos = std::size_t{1} << chosen.size();
      for (Vertex star : {si, sj}) {
        for (std::size_t mask = 0; mask < combos; ++mask) {
          std::vector<Vertex> s{w, star};
          for (std::size_t q = 0; q < chosen.size(); ++q)
            s.push_back((mask >> q) & 1U ? chosen[q].second : chosen[q].first);
          std::sort(s.begin(), s.end());
          sets.push_back(std::move(s));
        }
      }
      return sets;
    };

    if (rest.empty()) {
      tick();
      for (const auto& s : partials())
        if (!h.has_sorted_edge(s)) return false;
      return accept();
    }
    const int cls = rest[depth];
    // Every partial transversal through u must lie inside some link edge.
    auto live = [&](Vertex u) {
      const std::size_t combos = std::size_t{1} << chosen.size();
      for (Vertex star : {si, sj})
        for (std::size_t mask = 0; mask < combos; ++mask) {
          std::vector<Vertex> s{star, u};
          for (std::size_t q = 0; q < chosen.size(); ++q)
            s.push_back((mask >> q) & 1U ? chosen[q].second : chosen[q].first);
          if (!in_shadow(std::move(s), star == si ? ij.second : ij.first)) return false;
        }
      return true;
    };
    std::vector<Vertex> pool;
    if (depth + 1 == rest.size()) {
      VertexSet cand(h.n());
      for (Vertex v : k_frame.at(cls))
        if (v < h.n() && !used.contains(v)) cand.insert(v);
      for (const auto& s : partials()) {
        cand &= h.completions(s);
        if (cand.empty()) return false;
      }
      pool = cand.members();
    } else {
      for (Vertex v : k_frame.at(cls))
        if (v < h.n() && !used.contains(v) && live(v)) pool.push_back(v);
    }
    for (std::size_t x = 0; x < pool.size(); ++x) {
      for (std::size_t y = x + 1; y < pool.size(); ++y) {
        tick();
        chosen.emplace_back(pool[x], pool[y]);
        used.insert(pool[x]);
        used.insert(pool[y]);
        const bool done = depth + 1 == rest.size() ? accept() : choose_pairs(depth + 1, ij, w, si, sj, rest, chosen);
        used.erase(pool[x]);
        used.erase(pool[y]);
        chosen.pop_back();
        if (done) return true;
      }
    }
    return false;
  };

  solve_edge = [&](std::size_t index) -> bool {
    if (index == edges.size()) return true;
    const ClassPair ij = edges[index];
    const auto restore = [&, index] { edge_index = index; };
    std::vector<int> rest;
    for (int c = 1; c <= k; ++c)
      if (c != ij.first && c != ij.second) rest.push_back(c);
    for (Vertex w = 0; w < h.n(); ++w) {
      if (in_frame.contains(w) || used.contains(w) || h.vertex_degrees()[w] == 0) continue;
      if (!build_shadow(w, ij)) continue;
      used.insert(w);
      for (Vertex si : k_frame.at(ij.first)) {
        if (si >= h.n() || used.contains(si) || !in_shadow({si}, ij.second)) continue;
        used.insert(si);
        for (Vertex sj : k_frame.at(ij.second)) {
          if (sj >= h.n() || used.contains(sj) || !in_shadow({sj}, ij.first)) continue;
          tick();
          used.insert(sj);
          std::vector<std::pair<Vertex, Vertex>> chosen;
          restore();
          const bool done = choose_pairs(0, ij, w, si, sj, rest, chosen);
          used.erase(sj);
          if (done) return true;
        }
        used.erase(si);
      }
      used.erase(w);
    }
    return false;
  };

  if (!solve_edge(0)) return std::nullopt;
  const GadgetReport report = verify_gadget(h, k_frame, g, result, avoid);
  if (!report.ok()) throw ExtensionError("constructed gadget failed verification: " + report.violations.front());
  return result;
}

std::optional<std::vector<Vertex>> gadget_path(const Hypergraph& h, const VertexPartition& k_frame,
                                               const ClassPair& ij, const GadgetPiece& piece, const Perm& sigma) {
  if (sigma(1) != ij.first && sigma(1) != ij.second)
    throw PreconditionError("sigma(1) must lie in {" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "}");
  const int k = h.k();
  const auto starts = start_classes_of(sigma * tau(k));
  const auto ends = end_classes_of(pair_transposition(k, ij) * sigma);
  if (piece.witness) {
    auto seq = pattern_path(ij, piece, sigma);
    TightPath candidate{seq, k_frame};
    if (is_tight_path(h, seq) && start_type(candidate) == sigma * tau(k) &&
        end_type(candidate) == pair_transposition(k, ij) * sigma)
      return seq;
  }
  return typed_spanning_path(h, k_frame, piece.members, starts, ends);
}

ExtensionResult extend_by_cycle_perm(const Hypergraph& h, const TightPath& p, const Perm& sigma, const Gadget& w) {
  validate_path(h, p);
  const int k = h.k();
  const auto pi = end_type(p);
  require(pi.has_value(), "path end is not typed against the frame");
  require(sigma.k() == k, "sigma must act on [k]");
  const auto cycles = decompose(sigma).cycles;
  require(cycles.size() == 1, "sigma must be a single cycle of length at least 2");
  const auto& cyc = cycles.front();
  const int last = (*pi)(1);
  auto pos = std::find(cyc.begin(), cyc.end(), last);
  require(pos != cyc.end(), "end_type(P)(1) = " + std::to_string(last) + " does not lie on sigma");
  // Rotate so the cycle ends at π(1).
  std::vector<int> rotated(pos + 1, cyc.end());
  rotated.insert(rotated.end(), cyc.begin(), pos + 1);
  const ClassGraph g = w.graph(k);
  for (std::size_t j = 0; j + 1 < rotated.size(); ++j)
    require(g.has_edge(rotated[j], rotated[j + 1]),
            "gadget graph lacks the edge " + std::to_string(rotated[j]) + std::to_string(rotated[j + 1]));
  const VertexSet on_path = VertexSet::of(h.n(), p.vertices);
  check_gadget_avoids(w, on_path);
  for (int c : rotated)
    require(free_in_class(p.frame, c, on_path) >= 2 * g.size(),
            "|V_" + std::to_string(c) + " \\ V(P)| is below 2|E(G)|");

  Builder b(h, p.frame, p.vertices, w);
  b.cycle_steps(rotated);
  ExtensionResult out = b.result(p.vertices.size());

  const auto r = rotated.size();
  ensure(end_type(out.path) == sigma * *pi, "end type must be sigma * pi");
  ensure(out.path.length() == p.length() + 2 * static_cast<std::size_t>(k) * (r - 1), "length grows by 2k(r-1)");
  for (int c = 1; c <= k; ++c) {
    const bool early = std::find(rotated.begin(), rotated.end() - 1, c) != rotated.end() - 1;
    ensure(out.consumption[static_cast<std::size_t>(c - 1)] == 2 * (r - 1) - (early ? 1 : 0),
           "per-class consumption for V_" + std::to_string(c));
  }
  std::vector<Vertex> expected;
  for (std::size_t j = 0; j + 1 < r; ++j)
    expected.push_back(w.pieces.at({std::min(rotated[j], rotated[j + 1]), std::max(rotated[j], rotated[j + 1])}).outside);
  std::sort(expected.begin(), expected.end());
  ensure(out.new_outside == expected, "off-frame vertices are exactly the used pieces' outside vertices");
  return out;
}

ExtensionResult extend_to_sigma(const Hypergraph& h, const TightPath& p, const Perm& sigma, const Gadget& w) {
  validate_path(h, p);
  const int k = h.k();
  require(sigma.k() == k, "sigma must act on [k]");
  require(end_type(p) == Perm::identity(k), "path end must have type id");
  const SigmaStats stats = sigma_stats(sigma);
  const ClassGraph g = w.graph(k);
  require(g.contains(stats.g_sigma), "gadget graph must contain G_sigma");
  const VertexSet on_path = VertexSet::of(h.n(), p.vertices);
  check_gadget_avoids(w, on_path);
  for (int c = 1; c <= k; ++c)
    require(free_in_class(p.frame, c, on_path) >= 2 * g.size() + 2,
            "|V_" + std::to_string(c) + " \\ V(P)| is below 2|E(G)| + 2");

  Builder b(h, p.frame, p.vertices, w);
  b.sigma_steps(sigma);
  ExtensionResult out = b.result(p.vertices.size());

  const std::size_t e = stats.g_sigma.size();
  ensure(end_type(out.path) == sigma * tau_power(k, stats.m - 1), "end type must be sigma tau^(m-1)");
  ensure(out.path.length() == p.length() + 2 * static_cast<std::size_t>(k) * e + static_cast<std::size_t>(stats.m - 1),
         "length grows by 2k|E(G_sigma)| + m - 1");
  for (int c = 1; c <= k; ++c)
    ensure(out.consumption[static_cast<std::size_t>(c - 1)] == 2 * e - (stats.x(c) ? 1 : 0) + (stats.y(c) ? 1 : 0),
           "per-class consumption for V_" + std::to_string(c));
  ensure(out.new_outside == outside_of(w, stats.g_sigma), "off-frame vertices are exactly w_ij for ij in G_sigma");
  return out;
}

ClassGraph closing_graph(const Perm& start, const Perm& end, int r) {
  const int k = start.k();
  const Perm inv = inverse(end);
  return relabel(sigma_stats(inv * start * tau_power(k, -r)).g_sigma, end);
}

ClosingResult close_cycle(const Hypergraph& h, const TightPath& p, std::size_t s_extra, const Gadget& w) {
  validate_path(h, p);
  const int k = h.k();
  const auto sigma = start_type(p);
  const auto pi = end_type(p);
  require(sigma.has_value() && pi.has_value(), "path must have typed start and end");
  const auto kk = static_cast<std::size_t>(k);
  require(s_extra >= kk * (2 * kk - 1), "s_extra must be at least k(2k-1)");
  const int r = static_cast<int>(s_extra % kk);
  const ClassGraph g = closing_graph(*sigma, *pi, r);
  const ClassGraph have = w.graph(k);
  require(have.contains(g), "gadget graph must contain G(sigma, pi, r)");
  const VertexSet on_path = VertexSet::of(h.n(), p.vertices);
  check_gadget_avoids(w, on_path);
  for (int c = 1; c <= k; ++c)
    require(free_in_class(p.frame, c, on_path) >= s_extra / kk + 1,
            "|V_" + std::to_string(c) + " \\ V(P)| is below floor(s/k) + 1");

  // Work in the frame where the end type is id: new class c is old class π(c).
  const VertexPartition frame = p.frame.relabeled(*pi);
  const Perm inv = inverse(*pi);
  const Perm sigma_new = inv * *sigma;
  const Perm sigma_prime = sigma_new * tau_power(k, -r);
  const SigmaStats stats = sigma_stats(sigma_prime);
  Gadget needed;
  for (auto ij : g.edges()) needed.pieces[ij] = w.pieces.at(ij);
  Builder b(h, frame, p.vertices, relabel_gadget(needed, inv));
  b.sigma_steps(sigma_prime);
  for (int i = 0; i < k - stats.m + 1; ++i) b.simple_step();
  ensure(b.end() == sigma_prime, "end type after the padding extensions");
  for (int i = 0; i < r; ++i) b.simple_step();
  ensure(b.end() == sigma_new, "end type must match the start type");
  const std::size_t target = p.length() + s_extra;
  ensure(b.seq.size() <= target && (target - b.seq.size()) % kk == 0, "length residue before closing");
  while (b.seq.size() < target) b.simple_step();

  ClosingResult out;
  out.sequence = b.seq;
  ensure(is_tight_cycle(h, out.sequence), "closed sequence is a tight cycle");
  out.cycle = canonical_cycle(out.sequence);
  out.used_graph = g;
  const VertexSet on_cycle = VertexSet::of(h.n(), out.sequence);
  for (const auto& [ij, piece] : w.pieces) {
    if (g.has_edge(ij.first, ij.second)) continue;
    if (std::none_of(piece.members.begin(), piece.members.end(), [&](Vertex v) { return on_cycle.contains(v); }))
      out.leftover.pieces[ij] = piece;
  }
  out.consumption.assign(kk, 0);
  for (std::size_t q = p.length(); q < out.sequence.size(); ++q) {
    const int c = p.frame.class_of(out.sequence[q]);
    if (c == 0)
      out.new_outside.push_back(out.sequence[q]);
    else
      ++out.consumption[static_cast<std::size_t>(c - 1)];
  }
  std::sort(out.new_outside.begin(), out.new_outside.end());
  ensure(out.new_outside == outside_of(w, g), "off-frame vertices are exactly w_ij for ij in G");
  if (*sigma == *pi) {
    const auto [lo, hi] = std::minmax_element(out.consumption.begin(), out.consumption.end());
    ensure(*hi - *lo <= 1, "class balance when start and end types agree");
  }
  return out;
}

}  // namespace tightcycle
