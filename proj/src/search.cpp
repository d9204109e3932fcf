#include "tightcycle/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "tightcycle/errors.hpp"
#include "tightcycle/perm.hpp"

namespace tightcycle {

void NodeBudget::tick() {
  if (++used_ > limit_) throw BudgetExceeded("search exceeded its budget of " + std::to_string(limit_) + " nodes");
}

namespace {

void sort_small(Vertex* first, std::size_t len) { std::sort(first, first + len); }

// Backtracking over tight paths that close into cycles of length s.
class CycleSearch {
 public:
  CycleSearch(const Hypergraph& h, int s, NodeBudget& budget) : h_(h), k_(h.k()), s_(s), budget_(budget), used_(h.n()) {}

  // Rooted at v. With min_root, all other vertices exceed v and each cycle is reported once.
  void run(Vertex v, bool min_root, const std::function<bool(const std::vector<Vertex>&)>& report) {
    report_ = &report;
    min_root_ = min_root;
    root_ = v;
    stopped_ = false;
    seq_.assign(1, v);
    used_ = VertexSet(h_.n());
    used_.insert(v);
    for (std::uint32_t id : h_.incident_edges(v)) {
      const Edge& e = h_.edges()[id];
      std::vector<Vertex> rest;
      for (Vertex u : e)
        if (u != v) rest.push_back(u);
      if (min_root && rest.front() < v) continue;
      std::sort(rest.begin(), rest.end());
      do {
        for (Vertex u : rest) {
          seq_.push_back(u);
          used_.insert(u);
        }
        extend();
        for (Vertex u : rest) {
          seq_.pop_back();
          used_.erase(u);
        }
        if (stopped_) return;
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
  }

 private:
  bool allowed(Vertex u) const { return !used_.contains(u) && (!min_root_ || u > root_); }

  std::size_t free_count() const {
    std::size_t c = 0;
    for (Vertex u = 0; u < h_.n(); ++u)
      if (allowed(u)) ++c;
    return c;
  }

  VertexSet window_completions(std::size_t start_pos) const {
    // Completions for the window starting at start_pos (mod s) whose only unknown slot is s-1.
    Vertex buf[kMaxUniformity];
    std::size_t len = 0;
    const auto s = static_cast<std::size_t>(s_);
    for (int i = 0; i < k_; ++i) {
      const std::size_t pos = (start_pos + static_cast<std::size_t>(i)) % s;
      if (pos != s - 1) buf[len++] = seq_[pos];
    }
    sort_small(buf, len);
    return h_.completions(std::span<const Vertex>(buf, len));
  }

  void extend() {
    budget_.tick();
    const auto s = static_cast<std::size_t>(s_);
    const std::size_t len = seq_.size();
    if (len + free_count() < s) return;

    VertexSet cand(h_.n());
    if (len == s - 1) {
      cand = window_completions(s - static_cast<std::size_t>(k_));
      for (std::size_t j = s - static_cast<std::size_t>(k_) + 1; j < s && !cand.empty(); ++j) cand &= window_completions(j);
    } else {
      Vertex buf[kMaxUniformity];
      const auto km1 = static_cast<std::size_t>(k_ - 1);
      std::copy(seq_.end() - static_cast<std::ptrdiff_t>(km1), seq_.end(), buf);
      sort_small(buf, km1);
      cand = h_.completions(std::span<const Vertex>(buf, km1));
    }

    std::vector<Vertex> order;
    cand.for_each([&](Vertex u) {
      if (!allowed(u)) return;
      if (len == s - 1 && min_root_ && u < seq_[1]) return;
      order.push_back(u);
    });
    const auto& deg = h_.vertex_degrees();
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return deg[a] < deg[b]; });

    for (Vertex u : order) {
      seq_.push_back(u);
      if (len + 1 == s) {
        if (!(*report_)(seq_)) stopped_ = true;
      } else {
        used_.insert(u);
        extend();
        used_.erase(u);
      }
      seq_.pop_back();
      if (stopped_) return;
    }
  }

  const Hypergraph& h_;
  int k_;
  int s_;
  NodeBudget& budget_;
  VertexSet used_;
  std::vector<Vertex> seq_;
  const std::function<bool(const std::vector<Vertex>&)>* report_ = nullptr;
  bool min_root_ = false;
  Vertex root_ = 0;
  bool stopped_ = false;
};

void require_cycle_length(const Hypergraph& h, int s) {
  if (s <= h.k())
    throw InputError("cycle length must exceed k (got s = " + std::to_string(s) + ", k = " + std::to_string(h.k()) + ")");
}

}  // namespace

std::optional<TightCycle> find_cycle_through(const Hypergraph& h, Vertex v, int s, std::uint64_t budget) {
  require_cycle_length(h, s);
  if (v >= h.n()) throw InputError("vertex out of range");
  if (static_cast<std::size_t>(s) > h.n()) return std::nullopt;
  NodeBudget nodes(budget);
  CycleSearch search(h, s, nodes);
  std::optional<TightCycle> found;
  search.run(v, false, [&](const std::vector<Vertex>& seq) {
    found = canonical_cycle(seq);
    return false;
  });
  if (found && !is_tight_cycle(h, found->vertices)) throw std::logic_error("cycle search produced an invalid cycle");
  return found;
}

std::vector<TightCycle> enumerate_cycles(const Hypergraph& h, int s, std::uint64_t budget) {
  require_cycle_length(h, s);
  std::vector<TightCycle> out;
  if (static_cast<std::size_t>(s) > h.n()) return out;
  NodeBudget nodes(budget);
  CycleSearch search(h, s, nodes);
  for (Vertex v = 0; v < h.n(); ++v)
    search.run(v, true, [&](const std::vector<Vertex>& seq) {
      out.push_back(TightCycle{seq});
      return true;
    });
  std::sort(out.begin(), out.end());
  return out;
}

CoveringReport covering_check(const Hypergraph& h, int s, std::uint64_t budget, int jobs) {
  require_cycle_length(h, s);
  CoveringReport rep{VertexSet(h.n()), VertexSet(h.n()), std::vector<std::optional<TightCycle>>(h.n())};
  std::mutex mu;
  std::atomic<Vertex> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      for (Vertex v = next++; v < h.n(); v = next++) {
        {
          std::lock_guard lock(mu);
          if (rep.covered.contains(v)) continue;
        }
        auto c = find_cycle_through(h, v, s, budget);
        std::lock_guard lock(mu);
        if (!c) {
          rep.uncovered.insert(v);
          continue;
        }
        for (Vertex u : c->vertices)
          if (!rep.covered.contains(u)) {
            rep.covered.insert(u);
            rep.witness[u] = *c;
          }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next = static_cast<Vertex>(h.n());
    }
  };

  const int n_jobs = std::max(1, jobs);
  if (n_jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < n_jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rep;
}

// ---- tilings ----

std::vector<Vertex> TilePiece::vertex_set() const {
  std::vector<Vertex> out = image;
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Tiling::count(TileKind kind) const {
  return static_cast<std::size_t>(std::count_if(pieces.begin(), pieces.end(), [&](const TilePiece& p) { return p.kind == kind; }));
}

VertexSet Tiling::covered(std::size_t n) const {
  VertexSet out(n);
  for (const auto& p : pieces)
    for (Vertex v : p.image) out.insert(v);
  return out;
}

CycleCopies cycle_copies(const Hypergraph& h, int s, std::uint64_t budget) {
  CycleCopies out;
  if (s == h.k()) {
    for (const Edge& e : h.edges()) {
      out.sets.push_back(VertexSet::of(h.n(), e));
      out.orders.push_back(e);
    }
    return out;
  }
  require_cycle_length(h, s);
  if (static_cast<std::size_t>(s) > h.n()) return out;
  NodeBudget nodes(budget);
  CycleSearch search(h, s, nodes);
  std::set<std::vector<Vertex>> seen;
  for (Vertex v = 0; v < h.n(); ++v)
    search.run(v, true, [&](const std::vector<Vertex>& seq) {
      std::vector<Vertex> key = seq;
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) {
        out.sets.push_back(VertexSet::of(h.n(), seq));
        out.orders.push_back(seq);
      }
      return true;
    });
  return out;
}

namespace {

// Copies as vertex sets plus, per vertex, the copies containing it.
struct CopyIndex {
  std::vector<VertexSet> sets;
  std::vector<std::vector<std::size_t>> by_vertex;

  CopyIndex(std::size_t n, std::vector<VertexSet> s) : sets(std::move(s)), by_vertex(n) {
    for (std::size_t i = 0; i < sets.size(); ++i) sets[i].for_each([&](Vertex v) { by_vertex[v].push_back(i); });
  }
};

class ExactCover {
 public:
  ExactCover(const CopyIndex& idx, std::size_t n, NodeBudget& budget) : idx_(idx), n_(n), budget_(budget), used_(n) {}

  bool solve() {
    budget_.tick();
    Vertex best_v = 0;
    std::size_t best_count = SIZE_MAX;
    for (Vertex v = 0; v < n_; ++v) {
      if (used_.contains(v)) continue;
      std::size_t c = 0;
      for (std::size_t i : idx_.by_vertex[v])
        if (!idx_.sets[i].intersects(used_)) ++c;
      if (c < best_count) {
        best_count = c;
        best_v = v;
        if (c == 0) return false;
      }
    }
    if (best_count == SIZE_MAX) return true;
    for (std::size_t i : idx_.by_vertex[best_v]) {
      if (idx_.sets[i].intersects(used_)) continue;
      chosen.push_back(i);
      used_ |= idx_.sets[i];
      if (solve()) return true;
      used_ -= idx_.sets[i];
      chosen.pop_back();
    }
    return false;
  }

  std::vector<std::size_t> chosen;

 private:
  const CopyIndex& idx_;
  std::size_t n_;
  NodeBudget& budget_;
  VertexSet used_;
};

// Maximum-weight packing of copies; weight and size per copy.
class Packing {
 public:
  Packing(const CopyIndex& idx, std::vector<long> weight, std::size_t n, NodeBudget& budget)
      : idx_(idx), weight_(std::move(weight)), n_(n), budget_(budget), used_(n), dead_(n) {
    // Upper bound on weight per covered vertex, as a fraction best_num / best_den.
    for (std::size_t i = 0; i < idx_.sets.size(); ++i) {
      const long size = static_cast<long>(idx_.sets[i].count());
      if (ratio_den_ == 0 || weight_[i] * ratio_den_ > ratio_num_ * size) {
        ratio_num_ = weight_[i];
        ratio_den_ = size;
      }
    }
  }

  void solve() { branch(0); }

  long best_value = 0;
  std::vector<std::size_t> best;

 private:
  void branch(long value) {
    budget_.tick();
    if (value > best_value) {
      best_value = value;
      best = chosen_;
    }
    if (ratio_den_ == 0) return;
    // Free vertices still coverable by some available copy.
    VertexSet live(n_);
    Vertex pivot = static_cast<Vertex>(n_);
    for (Vertex v = 0; v < n_; ++v) {
      if (used_.contains(v) || dead_.contains(v)) continue;
      for (std::size_t i : idx_.by_vertex[v])
        if (!idx_.sets[i].intersects(used_) && !idx_.sets[i].intersects(dead_)) {
          live.insert(v);
          if (pivot == n_) pivot = v;
          break;
        }
    }
    if (pivot == n_) return;
    const long free = static_cast<long>(live.count());
    if ((best_value - value) * ratio_den_ >= free * ratio_num_) return;

    for (std::size_t i : idx_.by_vertex[pivot]) {
      if (idx_.sets[i].intersects(used_) || idx_.sets[i].intersects(dead_)) continue;
      used_ |= idx_.sets[i];
      chosen_.push_back(i);
      branch(value + weight_[i]);
      chosen_.pop_back();
      used_ -= idx_.sets[i];
    }
    dead_.insert(pivot);
    branch(value);
    dead_.erase(pivot);
  }

  const CopyIndex& idx_;
  std::vector<long> weight_;
  std::size_t n_;
  NodeBudget& budget_;
  VertexSet used_;
  VertexSet dead_;
  std::vector<std::size_t> chosen_;
  long ratio_num_ = 0;
  long ratio_den_ = 0;
};

}  // namespace

std::optional<Tiling> perfect_tiling(const Hypergraph& h, int s, std::uint64_t budget) {
  if (s < h.k()) throw InputError("tile size must be at least k");
  if (h.n() % static_cast<std::size_t>(s) != 0) return std::nullopt;
  Tiling t;
  if (h.n() == 0) return t;
  CycleCopies copies = cycle_copies(h, s, budget);
  CopyIndex idx(h.n(), copies.sets);
  NodeBudget nodes(budget);
  ExactCover cover(idx, h.n(), nodes);
  if (!cover.solve()) return std::nullopt;
  for (std::size_t i : cover.chosen) t.pieces.push_back(TilePiece{TileKind::C, copies.orders[i]});
  return t;
}

Tiling max_tiling(const Hypergraph& h, int s, std::uint64_t budget) {
  if (s < h.k()) throw InputError("tile size must be at least k");
  CycleCopies copies = cycle_copies(h, s, budget);
  CopyIndex idx(h.n(), copies.sets);
  NodeBudget nodes(budget);
  Packing pack(idx, std::vector<long>(copies.sets.size(), 1), h.n(), nodes);
  pack.solve();
  Tiling t;
  for (std::size_t i : pack.best) t.pieces.push_back(TilePiece{TileKind::C, copies.orders[i]});
  return t;
}

namespace {

bool is_copy_of(const Hypergraph& pattern, const Hypergraph& host, const std::vector<Vertex>& image) {
  if (image.size() != pattern.n()) return false;
  VertexSet seen(host.n());
  for (Vertex v : image) {
    if (v >= host.n() || seen.contains(v)) return false;
    seen.insert(v);
  }
  std::vector<Vertex> buf;
  for (const Edge& e : pattern.edges()) {
    buf.clear();
    for (Vertex p : e) buf.push_back(image[p]);
    if (!host.has_edge(buf)) return false;
  }
  return true;
}

}  // namespace

bool validate_tiling(const Hypergraph& h, int s, const TileFamily* fam, const Tiling& t) {
  VertexSet used(h.n());
  for (const TilePiece& p : t.pieces) {
    for (Vertex v : p.image) {
      if (v >= h.n() || used.contains(v)) return false;
      used.insert(v);
    }
    switch (p.kind) {
      case TileKind::C:
        if (p.image.size() != static_cast<std::size_t>(s)) return false;
        if (s == h.k() ? !h.has_edge(p.image) : !is_tight_cycle(h, p.image)) return false;
        break;
      case TileKind::F:
        if (!fam || !is_copy_of(fam->f_s.graph, h, p.image)) return false;
        break;
      case TileKind::E:
        if (!fam || !is_copy_of(fam->e_s.graph, h, p.image)) return false;
        break;
    }
  }
  return true;
}

// ---- embeddings ----

namespace {

std::vector<int> twin_classes(const Hypergraph& pattern) {
  const std::size_t n = pattern.n();
  std::vector<int> cls(n, -1);
  int next = 0;
  std::vector<Vertex> buf;
  auto swapped_is_automorphism = [&](Vertex a, Vertex b) {
    for (const Edge& e : pattern.edges()) {
      const bool has_a = std::find(e.begin(), e.end(), a) != e.end();
      const bool has_b = std::find(e.begin(), e.end(), b) != e.end();
      if (has_a == has_b) continue;
      buf.clear();
      for (Vertex v : e) buf.push_back(v == a ? b : v == b ? a : v);
      if (!pattern.has_edge(buf)) return false;
    }
    return true;
  };
  for (Vertex a = 0; a < n; ++a) {
    if (cls[a] >= 0) continue;
    cls[a] = next;
    for (Vertex b = a + 1; b < n; ++b)
      if (cls[b] < 0 && swapped_is_automorphism(a, b)) cls[b] = next;
    ++next;
  }
  return cls;
}

class Embedder {
 public:
  Embedder(const Hypergraph& pattern, const Hypergraph& host, const std::vector<std::pair<Vertex, Vertex>>& pinned,
           NodeBudget& budget, const std::function<bool(const std::vector<Vertex>&)>& f)
      : pattern_(pattern), host_(host), budget_(budget), f_(f), image_(pattern.n(), 0), used_(host.n()) {
    const std::size_t pn = pattern.n();
    std::vector<bool> placed(pn, false);
    std::vector<bool> is_pinned(pn, false);
    for (auto [p, v] : pinned) {
      if (p >= pn || v >= host.n()) throw InputError("pinned vertex out of range");
      if (placed[p]) throw InputError("pattern vertex pinned twice");
      order_.push_back(p);
      placed[p] = true;
      is_pinned[p] = true;
      pinned_image_.push_back(v);
    }
    // Greedy order: most edges completed, then most edges touched.
    while (order_.size() < pn) {
      Vertex best = 0;
      long best_closed = -1, best_touch = -1;
      for (Vertex p = 0; p < pn; ++p) {
        if (placed[p]) continue;
        long closed = 0, touch = 0;
        for (std::uint32_t id : pattern.incident_edges(p)) {
          const Edge& e = pattern.edges()[id];
          const auto placed_count = std::count_if(e.begin(), e.end(), [&](Vertex u) { return placed[u]; });
          if (placed_count == static_cast<long>(e.size()) - 1) ++closed;
          if (placed_count > 0) ++touch;
        }
        if (closed > best_closed || (closed == best_closed && touch > best_touch)) {
          best = p;
          best_closed = closed;
          best_touch = touch;
        }
      }
      order_.push_back(best);
      placed[best] = true;
    }
    std::vector<std::size_t> pos(pn);
    for (std::size_t i = 0; i < pn; ++i) pos[order_[i]] = i;
    closing_.resize(pn);
    for (std::size_t i = 0; i < pn; ++i) {
      const Vertex p = order_[i];
      for (std::uint32_t id : pattern.incident_edges(p)) {
        const Edge& e = pattern.edges()[id];
        if (std::all_of(e.begin(), e.end(), [&](Vertex u) { return pos[u] <= i; })) closing_[i].push_back(id);
      }
    }
    const auto cls = twin_classes(pattern);
    prev_twin_.assign(pn, -1);
    std::vector<long> last_of_class(pn, -1);
    for (std::size_t i = 0; i < pn; ++i) {
      const Vertex p = order_[i];
      if (is_pinned[p]) continue;
      const auto c = static_cast<std::size_t>(cls[p]);
      prev_twin_[i] = last_of_class[c];
      last_of_class[c] = static_cast<long>(i);
    }
  }

  void run() { place(0); }

 private:
  bool fits(std::size_t i, Vertex v) {
    if (used_.contains(v)) return false;
    const Vertex p = order_[i];
    if (host_.vertex_degrees()[v] < pattern_.vertex_degrees()[p]) return false;
    if (prev_twin_[i] >= 0 && v < image_[order_[static_cast<std::size_t>(prev_twin_[i])]]) return false;
    image_[p] = v;
    Vertex buf[kMaxUniformity];
    for (std::uint32_t id : closing_[i]) {
      const Edge& e = pattern_.edges()[id];
      for (std::size_t j = 0; j < e.size(); ++j) buf[j] = image_[e[j]];
      if (!host_.has_edge(std::span<const Vertex>(buf, e.size()))) return false;
    }
    return true;
  }

  bool place(std::size_t i) {
    budget_.tick();
    if (i == order_.size()) return f_(image_);
    const Vertex p = order_[i];
    auto attempt = [&](Vertex v) {
      if (!fits(i, v)) return true;
      used_.insert(v);
      const bool go_on = place(i + 1);
      used_.erase(v);
      return go_on;
    };
    if (i < pinned_image_.size()) return attempt(pinned_image_[i]);
    if (!closing_[i].empty()) {
      const Edge& e = pattern_.edges()[closing_[i].front()];
      Vertex buf[kMaxUniformity];
      std::size_t len = 0;
      for (Vertex u : e)
        if (u != p) buf[len++] = image_[u];
      sort_small(buf, len);
      const VertexSet cand = host_.completions(std::span<const Vertex>(buf, len));
      for (Vertex v : cand.members())
        if (!attempt(v)) return false;
      return true;
    }
    for (Vertex v = 0; v < host_.n(); ++v)
      if (!attempt(v)) return false;
    return true;
  }

  const Hypergraph& pattern_;
  const Hypergraph& host_;
  NodeBudget& budget_;
  const std::function<bool(const std::vector<Vertex>&)>& f_;
  std::vector<Vertex> order_;
  std::vector<Vertex> pinned_image_;
  std::vector<std::vector<std::uint32_t>> closing_;
  std::vector<long> prev_twin_;
  std::vector<Vertex> image_;
  VertexSet used_;
};

}  // namespace

void for_each_embedding(const Hypergraph& pattern, const Hypergraph& host,
                        const std::vector<std::pair<Vertex, Vertex>>& pinned, NodeBudget& budget,
                        const std::function<bool(const std::vector<Vertex>&)>& f) {
  if (pattern.k() != host.k()) throw InputError("pattern and host have different uniformity");
  if (pattern.n() > host.n()) return;
  Embedder(pattern, host, pinned, budget, f).run();
}

std::vector<std::vector<Vertex>> distinct_copies(const Hypergraph& pattern, const Hypergraph& host, NodeBudget& budget) {
  std::set<std::vector<Vertex>> seen;
  std::vector<std::vector<Vertex>> out;
  for_each_embedding(pattern, host, {}, budget, [&](const std::vector<Vertex>& image) {
    std::vector<Vertex> key = image;
    std::sort(key.begin(), key.end());
    if (seen.insert(std::move(key)).second) out.push_back(image);
    return true;
  });
  return out;
}

mpq_class integral_phi(std::size_t n, int s, std::size_t f_count, std::size_t e_count) {
  if (n == 0) throw InputError("phi is undefined on the empty vertex set");
  mpq_class covered = mpq_class(static_cast<long>(f_count)) + mpq_class(3, 5) * static_cast<long>(e_count);
  mpq_class phi = 1 - mpq_class(s) * covered / static_cast<long>(n);
  phi.canonicalize();
  return phi;
}

FeTilingResult fe_tiling_min_phi(const Hypergraph& h, const TileFamily& fam, std::uint64_t budget) {
  FeTilingResult res;
  NodeBudget nodes(budget);
  std::vector<std::vector<Vertex>> f_copies, e_copies;
  try {
    f_copies = distinct_copies(fam.f_s.graph, h, nodes);
    e_copies = distinct_copies(fam.e_s.graph, h, nodes);
  } catch (const BudgetExceeded&) {
    res.optimal = false;
  }
  res.f_copies = f_copies.size();
  res.e_copies = e_copies.size();

  std::vector<VertexSet> sets;
  std::vector<long> weight;
  for (const auto& c : f_copies) {
    sets.push_back(VertexSet::of(h.n(), c));
    weight.push_back(5);
  }
  for (const auto& c : e_copies) {
    sets.push_back(VertexSet::of(h.n(), c));
    weight.push_back(3);
  }
  CopyIndex idx(h.n(), std::move(sets));
  Packing pack(idx, weight, h.n(), nodes);
  try {
    pack.solve();
  } catch (const BudgetExceeded&) {
    res.optimal = false;
  }
  for (std::size_t i : pack.best) {
    if (i < f_copies.size())
      res.tiling.pieces.push_back(TilePiece{TileKind::F, f_copies[i]});
    else
      res.tiling.pieces.push_back(TilePiece{TileKind::E, e_copies[i - f_copies.size()]});
  }
  res.nodes = nodes.used();
  res.phi = integral_phi(h.n(), fam.s, res.tiling.count(TileKind::F), res.tiling.count(TileKind::E));
  return res;
}

// ---- auxiliary constructions ----

std::optional<std::vector<std::vector<Vertex>>> find_kkk_through(const Hypergraph& h, Vertex v, int t,
                                                                std::uint64_t budget) {
  if (t < 1) throw InputError("class size must be positive");
  if (v >= h.n()) throw InputError("vertex out of range");
  const int k = h.k();
  const PartitionedHost pattern = complete_partite(k, std::vector<std::size_t>(static_cast<std::size_t>(k), static_cast<std::size_t>(t)));
  NodeBudget nodes(budget);
  std::optional<std::vector<std::vector<Vertex>>> found;
  for_each_embedding(pattern.graph, h, {{pattern.classes.at(1).front(), v}}, nodes, [&](const std::vector<Vertex>& image) {
    std::vector<std::vector<Vertex>> classes;
    for (const auto& cls : pattern.classes.classes()) {
      classes.emplace_back();
      for (Vertex p : cls) classes.back().push_back(image[p]);
    }
    found = std::move(classes);
    return false;
  });
  return found;
}

PartitionedHost kkk_host(const Hypergraph& h, const std::vector<std::vector<Vertex>>& classes) {
  std::vector<Edge> edges;
  Edge cur;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      edges.push_back(cur);
      return;
    }
    for (Vertex v : classes[c]) {
      cur.push_back(v);
      rec(c + 1);
      cur.pop_back();
    }
  };
  rec(0);
  PartitionedHost out{Hypergraph(h.k(), h.n(), std::move(edges)), VertexPartition(h.n(), classes), {}, {}};
  return out;
}

LinkingHost linking_host(const Hypergraph& h, Vertex x, Vertex y) {
  if (x == y) throw InputError("linking host needs two distinct vertices");
  if (x >= h.n() || y >= h.n()) throw InputError("vertex out of range");
  LinkingHost out;
  std::vector<Vertex> relabel(h.n(), 0);
  for (Vertex v = 0; v < h.n(); ++v) {
    if (v == x || v == y) continue;
    relabel[v] = static_cast<Vertex>(out.original.size());
    out.original.push_back(v);
  }
  out.z = static_cast<Vertex>(out.original.size());
  std::vector<Edge> edges;
  std::set<Edge> link_x;
  for (const Edge& e : h.edges()) {
    const bool has_x = std::find(e.begin(), e.end(), x) != e.end();
    const bool has_y = std::find(e.begin(), e.end(), y) != e.end();
    if (!has_x && !has_y) {
      Edge f;
      for (Vertex v : e) f.push_back(relabel[v]);
      edges.push_back(std::move(f));
    } else if (has_x && !has_y) {
      Edge rest;
      for (Vertex v : e)
        if (v != x) rest.push_back(v);
      link_x.insert(rest);
    }
  }
  for (const Edge& e : h.edges()) {
    if (std::find(e.begin(), e.end(), y) == e.end() || std::find(e.begin(), e.end(), x) != e.end()) continue;
    Edge rest;
    for (Vertex v : e)
      if (v != y) rest.push_back(v);
    if (!link_x.contains(rest)) continue;
    Edge f{out.z};
    for (Vertex v : rest) f.push_back(relabel[v]);
    edges.push_back(std::move(f));
  }
  out.graph = Hypergraph(h.k(), h.n() - 1, std::move(edges));
  return out;
}

AuxReport bipartite_aux(const Hypergraph& h, const Edge& x, int s, const mpq_class& gamma, std::optional<int> ell) {
  const int k = h.k();
  if (x.size() != static_cast<std::size_t>(k) || !h.has_edge(x)) throw InputError("X must be an edge of H");
  if (s < 1) throw InputError("s must be positive");
  const int l = ell ? *ell : static_cast<int>(sigma_stats(tau_power(k, -(s % k))).g_sigma.size());
  AuxReport rep;
  const long n = static_cast<long>(h.n());
  rep.threshold = (mpq_class(l, s) + gamma) * n;
  rep.threshold.canonicalize();
  const mpq_class need = (mpq_class(1, 2) + mpq_class(1, 2 * s) + gamma) * n;
  rep.hypothesis_holds = true;
  for (int i = 0; i < k; ++i) {
    Edge rest;
    for (int j = 0; j < k; ++j)
      if (j != i) rest.push_back(x[static_cast<std::size_t>(j)]);
    std::sort(rest.begin(), rest.end());
    rep.neighbourhoods.push_back(h.completions(rest));
    if (mpq_class(static_cast<long>(rep.neighbourhoods.back().count())) < need) rep.hypothesis_holds = false;
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const auto common = (rep.neighbourhoods[static_cast<std::size_t>(i)] & rep.neighbourhoods[static_cast<std::size_t>(j)]).count();
      if (mpq_class(static_cast<long>(common)) <= rep.threshold) {
        rep.graph_edges.emplace_back(i, j);
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  // BFS two-colouring; a monochromatic edge closes an odd cycle through the BFS tree.
  std::vector<int> colour(static_cast<std::size_t>(k), -1), parent(static_cast<std::size_t>(k), -1), depth(static_cast<std::size_t>(k), 0);
  for (int root = 0; root < k && rep.bipartite; ++root) {
    if (colour[static_cast<std::size_t>(root)] >= 0) continue;
    colour[static_cast<std::size_t>(root)] = 0;
    std::vector<int> queue{root};
    for (std::size_t qi = 0; qi < queue.size() && rep.bipartite; ++qi) {
      const int u = queue[qi];
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (colour[static_cast<std::size_t>(w)] < 0) {
          colour[static_cast<std::size_t>(w)] = 1 - colour[static_cast<std::size_t>(u)];
          parent[static_cast<std::size_t>(w)] = u;
          depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(u)] + 1;
          queue.push_back(w);
        } else if (colour[static_cast<std::size_t>(w)] == colour[static_cast<std::size_t>(u)]) {
          rep.bipartite = false;
          std::vector<int> left{u}, right{w};
          int a = u, b = w;
          while (a != b) {
            if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
              a = parent[static_cast<std::size_t>(a)];
              left.push_back(a);
            } else {
              b = parent[static_cast<std::size_t>(b)];
              right.push_back(b);
            }
          }
          right.pop_back();
          rep.odd_cycle = left;
          rep.odd_cycle.insert(rep.odd_cycle.end(), right.rbegin(), right.rend());
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace tightcycle
