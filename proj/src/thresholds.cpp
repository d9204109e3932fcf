#include "tightcycle/thresholds.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "tightcycle/constructions.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/io.hpp"

namespace tightcycle {

std::string to_string(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::Ex: return "ex";
    case ThresholdKind::C: return "c";
    case ThresholdKind::T: return "t";
  }
  return "?";
}

ThresholdKind parse_threshold_kind(std::string_view text) {
  if (text == "ex") return ThresholdKind::Ex;
  if (text == "c") return ThresholdKind::C;
  if (text == "t") return ThresholdKind::T;
  throw InputError("threshold kind must be ex, c or t, got '" + std::string(text) + "'");
}

bool has_property(ThresholdKind kind, const Hypergraph& h, int s, std::uint64_t budget) {
  if (kind == ThresholdKind::T) return perfect_tiling(h, s, budget).has_value();
  const CycleCopies copies = cycle_copies(h, s, budget);
  if (kind == ThresholdKind::Ex) return !copies.sets.empty();
  VertexSet covered(h.n());
  for (const VertexSet& c : copies.sets) covered |= c;
  return covered.count() == h.n();
}

namespace {

using Mask = std::uint64_t;

// Edges of K^k_n in lexicographic order; edge j lives at bit E-1-j so that the
// numerically largest mask prefers early edges.
struct Universe {
  int k = 0;
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<Mask> i_set_masks;  // for each i-set, the edges containing it

  std::size_t e() const { return edges.size(); }
  Mask bit(std::size_t j) const { return Mask{1} << (e() - 1 - j); }

  Universe(int k_, std::size_t n_, int i) : k(k_), n(n_) {
    for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> s) { edges.emplace_back(s.begin(), s.end()); });
    for_each_subset(n, static_cast<std::size_t>(i), [&](std::span<const Vertex> s) {
      Mask m = 0;
      for (std::size_t j = 0; j < edges.size(); ++j)
        if (std::includes(edges[j].begin(), edges[j].end(), s.begin(), s.end())) m |= bit(j);
      i_set_masks.push_back(m);
    });
  }

  std::size_t min_degree(Mask m) const {
    std::size_t best = e();
    for (Mask s : i_set_masks) best = std::min<std::size_t>(best, std::popcount(m & s));
    return best;
  }

  Hypergraph graph(Mask m) const {
    std::vector<Edge> out;
    for (std::size_t j = 0; j < e(); ++j)
      if (m & bit(j)) out.push_back(edges[j]);
    return Hypergraph(k, n, std::move(out));
  }

  std::size_t index_of(Edge e_) const {
    std::sort(e_.begin(), e_.end());
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e_) - edges.begin());
  }
};

// For every non-identity vertex permutation, where each edge index goes.
std::vector<std::vector<std::uint8_t>> edge_permutations(const Universe& u) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<Vertex> p(u.n);
  std::iota(p.begin(), p.end(), Vertex{0});
  while (std::next_permutation(p.begin(), p.end())) {
    std::vector<std::uint8_t> map(u.e());
    for (std::size_t j = 0; j < u.e(); ++j) {
      Edge img;
      for (Vertex v : u.edges[j]) img.push_back(p[v]);
      map[j] = static_cast<std::uint8_t>(u.index_of(img));
    }
    out.push_back(std::move(map));
  }
  return out;
}

struct Best {
  std::mutex mu;
  std::atomic<long> value{-1};
  Mask mask = 0;

  void offer(long v, Mask m) {
    std::lock_guard lock(mu);
    if (v > value.load() || (v == value.load() && m > mask)) {
      value.store(v);
      mask = m;
    }
  }
};

class OrderlySearch {
 public:
  OrderlySearch(const Universe& u, ThresholdKind kind, int s, std::uint64_t budget)
      : u_(u), kind_(kind), s_(s), budget_(budget), perms_(edge_permutations(u)) {}

  bool canonical(Mask m) const {
    for (const auto& map : perms_) {
      Mask img = 0;
      for (Mask rest = m; rest; rest &= rest - 1) {
        const std::size_t j = u_.e() - 1 - static_cast<std::size_t>(std::countr_zero(rest));
        img |= u_.bit(map[j]);
      }
      if (img > m) return false;
    }
    return true;
  }

  // Visits m (already canonical) and its canonical descendants. `next` is the first edge
  // index that may be added.
  void visit(Mask m, std::size_t next, Best& best, std::vector<std::pair<Mask, std::size_t>>* frontier,
             std::size_t frontier_depth) {
    if (visited_.fetch_add(1) >= budget_) throw BudgetExceeded("threshold sweep exceeded its graph budget");
    const Mask below = next >= u_.e() ? 0 : (Mask{1} << (u_.e() - next)) - 1;
    // Descendants only add bits below; δ_i is monotone in the edge set.
    if (static_cast<long>(u_.min_degree(m | below)) < best.value.load()) return;
    if (has_property(kind_, u_.graph(m), s_)) return;  // monotone: every descendant has it too
    best.offer(static_cast<long>(u_.min_degree(m)), m);
    if (frontier && static_cast<std::size_t>(std::popcount(m)) == frontier_depth) {
      frontier->emplace_back(m, next);
      return;
    }
    for (std::size_t j = next; j < u_.e(); ++j) {
      const Mask child = m | u_.bit(j);
      if (canonical(child)) visit(child, j + 1, best, frontier, frontier_depth);
    }
  }

  std::uint64_t visited() const { return visited_.load(); }

 private:
  const Universe& u_;
  ThresholdKind kind_;
  int s_;
  std::uint64_t budget_;
  std::vector<std::vector<std::uint8_t>> perms_;
  std::atomic<std::uint64_t> visited_{0};
};

// Plain oracle: injective vertex sequences checked window by window, then exact cover
// over the vertex sets found. Shares nothing with the search module.
class NaiveProperty {
 public:
  NaiveProperty(const Universe& u, int s) : u_(u), s_(s) {}

  bool holds(ThresholdKind kind, Mask m) {
    mask_ = m;
    sets_.clear();
    seq_.clear();
    used_ = 0;
    for (Vertex v = 0; v < u_.n; ++v) extend(v);
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
    if (kind == ThresholdKind::Ex) return !sets_.empty();
    const std::uint32_t all = (std::uint32_t{1} << u_.n) - 1;
    if (kind == ThresholdKind::C) {
      std::uint32_t cov = 0;
      for (auto c : sets_) cov |= c;
      return cov == all;
    }
    return u_.n % static_cast<std::size_t>(s_) == 0 && cover(0, all);
  }

 private:
  bool is_edge(const std::vector<Vertex>& w) const { return mask_ & u_.bit(u_.index_of(w)); }

  void extend(Vertex v) {
    seq_.push_back(v);
    used_ |= std::uint32_t{1} << v;
    const std::size_t len = seq_.size();
    const std::size_t k = static_cast<std::size_t>(u_.k);
    bool ok = true;
    if (len >= k) ok = is_edge(std::vector<Vertex>(seq_.end() - static_cast<std::ptrdiff_t>(k), seq_.end()));
    if (ok) {
      if (len == static_cast<std::size_t>(s_)) {
        // Wrap-around windows.
        bool closed = true;
        for (std::size_t start = s_ - k + 1; closed && start < static_cast<std::size_t>(s_); ++start) {
          std::vector<Vertex> w;
          for (std::size_t t = 0; t < k; ++t) w.push_back(seq_[(start + t) % seq_.size()]);
          closed = is_edge(w);
        }
        if (closed) sets_.push_back(used_);
      } else {
        for (Vertex w = 0; w < u_.n; ++w)
          if (!(used_ >> w & 1U)) extend(w);
      }
    }
    used_ &= ~(std::uint32_t{1} << v);
    seq_.pop_back();
  }

  bool cover(std::uint32_t done, std::uint32_t all) const {
    if (done == all) return true;
    const int v = std::countr_one(done);
    for (auto c : sets_)
      if ((c >> v & 1U) && !(c & done) && cover(done | c, all)) return true;
    return false;
  }

  const Universe& u_;
  int s_;
  Mask mask_ = 0;
  std::vector<Vertex> seq_;
  std::uint32_t used_ = 0;
  std::vector<std::uint32_t> sets_;
};

std::string cache_path(const std::string& dir, ThresholdKind kind, int k, int s, std::size_t n, int i) {
  std::ostringstream os;
  os << dir << "/" << to_string(kind) << "_k" << k << "_s" << s << "_n" << n << "_i" << i << ".json";
  return os.str();
}

}  // namespace

ThresholdResult brute_threshold(ThresholdKind kind, int k, int s, std::size_t n, int i, const ThresholdOptions& options) {
  if (k < 2 || s < k) throw InputError("need 2 <= k <= s");
  if (i < 1 || i > k - 1) throw InputError("degree level must lie in 1..k-1");
  if (n < static_cast<std::size_t>(k)) throw InputError("need n >= k");
  const std::size_t e = binomial(n, static_cast<std::size_t>(k));
  if (e > 64) throw InputError("C(n, k) = " + std::to_string(e) + " edges exceed the 64-bit enumeration");
  if (!options.pruned && e > 24) throw InputError("the unpruned sweep needs C(n, k) <= 24");

  ThresholdResult r;
  r.kind = kind;
  r.k = k;
  r.s = s;
  r.n = n;
  r.i = i;
  r.pruned = options.pruned;
  r.uninformative = kind == ThresholdKind::C && i <= k - 2;

  if (kind == ThresholdKind::T && n % static_cast<std::size_t>(s) != 0) {
    r.trivial = true;
    r.value = binomial(n - static_cast<std::size_t>(i), static_cast<std::size_t>(k - i));
    std::vector<Edge> all;
    for_each_subset(n, static_cast<std::size_t>(k), [&](std::span<const Vertex> x) { all.emplace_back(x.begin(), x.end()); });
    r.witness = Hypergraph(k, n, std::move(all));
    return r;
  }

  const bool use_cache = options.pruned && !options.cache_dir.empty();
  const std::string path = use_cache ? cache_path(options.cache_dir, kind, k, s, n, i) : std::string();
  if (use_cache && std::filesystem::exists(path)) {
    ThresholdResult cached = threshold_from_json(nlohmann::json::parse(read_text_file(path)));
    cached.from_cache = true;
    cached.uninformative = r.uninformative;
    return cached;
  }

  const Universe u(k, n, i);
  Best best;
  if (options.pruned) {
    OrderlySearch search(u, kind, s, options.budget);
    const unsigned jobs = std::max(1U, options.jobs);
    if (jobs == 1) {
      search.visit(0, 0, best, nullptr, 0);
    } else {
      // Expand sequentially to a shallow frontier, then share its subtrees.
      std::vector<std::pair<Mask, std::size_t>> frontier;
      search.visit(0, 0, best, &frontier, 2);
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mu;
      auto worker = [&] {
        try {
          for (std::size_t t = next.fetch_add(1); t < frontier.size(); t = next.fetch_add(1)) {
            const auto [m, nx] = frontier[t];
            for (std::size_t j = nx; j < u.e(); ++j) {
              const Mask child = m | u.bit(j);
              if (search.canonical(child)) search.visit(child, j + 1, best, nullptr, 0);
            }
          }
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      if (failure) std::rethrow_exception(failure);
    }
    r.graphs_examined = search.visited();
  } else {
    NaiveProperty naive(u, s);
    const Mask end = Mask{1} << e;
    for (Mask m = 0; m < end; ++m) {
      if (++r.graphs_examined > options.budget) throw BudgetExceeded("threshold sweep exceeded its graph budget");
      const long d = static_cast<long>(u.min_degree(m));
      if (d < best.value.load()) continue;
      if (!naive.holds(kind, m)) best.offer(d, m);
    }
  }
  r.value = static_cast<std::size_t>(best.value.load());
  r.witness = u.graph(best.mask);

  if (use_cache) {
    std::filesystem::create_directories(options.cache_dir);
    write_text_file(path, to_json(r).dump(2) + "\n");
  }
  return r;
}

nlohmann::json to_json(const ThresholdResult& r) {
  return nlohmann::json{{"kind", to_string(r.kind)},
                        {"k", r.k},
                        {"s", r.s},
                        {"n", r.n},
                        {"i", r.i},
                        {"value", r.value},
                        {"graphs_examined", r.graphs_examined},
                        {"trivial", r.trivial},
                        {"pruned", r.pruned},
                        {"uninformative", r.uninformative},
                        {"witness", to_json(r.witness)}};
}

ThresholdResult threshold_from_json(const nlohmann::json& j) {
  try {
    ThresholdResult r;
    r.kind = parse_threshold_kind(j.at("kind").get<std::string>());
    r.k = j.at("k").get<int>();
    r.s = j.at("s").get<int>();
    r.n = j.at("n").get<std::size_t>();
    r.i = j.at("i").get<int>();
    r.value = j.at("value").get<std::size_t>();
    r.graphs_examined = j.value("graphs_examined", std::uint64_t{0});
    r.trivial = j.value("trivial", false);
    r.pruned = j.value("pruned", true);
    r.uninformative = j.value("uninformative", false);
    r.witness = hypergraph_from_json(j.at("witness"));
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed threshold record: ") + ex.what());
  }
}

std::string threshold_csv_header() { return "kind,k,s,n,i,value,graphs_examined,method,note"; }

std::string threshold_csv_row(const ThresholdResult& r) {
  std::ostringstream os;
  std::string note = r.trivial ? "s does not divide n" : "";
  if (r.uninformative) note = "asymptotically uninformative";
  os << to_string(r.kind) << ',' << r.k << ',' << r.s << ',' << r.n << ',' << r.i << ',' << r.value << ','
     << r.graphs_examined << ',' << (r.trivial ? "formula" : r.pruned ? "orderly" : "exhaustive") << ',' << note;
  return os.str();
}

bool LowerBoundReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const BoundCheck& c) { return c.degree_ok && c.obstruction_holds && !c.partial; });
}

namespace {

void measure(BoundCheck& c, int k) {
  c.achieved = min_degree(c.graph, k - 1).min_degree;
  c.degree_ok = static_cast<long>(c.achieved) >= c.claimed;
}

// Runs an obstruction search, turning budget exhaustion into a partial flag.
template <typename F>
void certify(BoundCheck& c, F&& check) {
  try {
    c.obstruction_holds = check();
  } catch (const BudgetExceeded&) {
    c.partial = true;
  }
}

}  // namespace

LowerBoundReport verify_lower_bounds(int k, int s, std::size_t n, std::uint64_t budget) {
  if (k < 2 || s <= k) throw InputError("need 2 <= k < s");
  if (n < static_cast<std::size_t>(s)) throw InputError("need n >= s");
  const Admissibility adm = admissible(k, s);
  LowerBoundReport rep;
  rep.k = k;
  rep.s = s;
  rep.n = n;
  rep.admissible = adm.admissible;
  const long half = static_cast<long>(n / 2);
  const bool divides = n % static_cast<std::size_t>(s) == 0;

  if (adm.admissible) {
    BoundCheck c;
    c.name = "covering";
    const std::size_t a = n - n / 2;
    c.construction = "h0 |A|=" + std::to_string(a) + " |B|=" + std::to_string(n / 2);
    c.graph = h0(k, a, n / 2);
    c.claimed = half - k + 1;
    measure(c, k);
    certify(c, [&] {
      const CoveringReport cov = covering_check(c.graph, s, budget);
      for (Vertex v = 0; v < (k % 2 == 0 ? n : a); ++v)
        if (cov.covered.contains(v)) return false;
      return true;
    });
    rep.checks.push_back(std::move(c));
  }

  if (divides) {
    BoundCheck c;
    c.name = "tiling";
    const std::size_t mod = static_cast<std::size_t>(s / adm.d);
    std::size_t a = n / 2;
    if (a % mod == 0) a += 1;
    c.construction = "h0 |A|=" + std::to_string(a) + " |B|=" + std::to_string(n - a);
    c.graph = h0(k, a, n - a);
    c.claimed = half - k;
    measure(c, k);
    certify(c, [&] { return !perfect_tiling(c.graph, s, budget).has_value(); });
    rep.checks.push_back(std::move(c));
  }

  if (adm.admissible && divides) {
    BoundCheck c;
    c.name = "barrier";
    BarrierGraph b = tiling_barrier(k, s, n);
    c.construction = "barrier |A|=" + std::to_string(b.a.size()) + " |B|=" + std::to_string(b.b.size()) +
                     " |T|=" + std::to_string(b.t.size()) + (b.degenerate ? " (degenerate)" : "");
    c.graph = std::move(b.graph);
    const long nn = static_cast<long>(n);
    const long ss = s;
    const long kk = k;
    if (k % 2 == 0) {
      c.claimed = nn * (ss + 1) / (2 * ss) - kk;
    } else {
      const long q = 2 * ss * (kk - 1) + kk;  // (1/2 + k/(2q)) n = n (q + k) / (2q)
      c.claimed = nn * (q + kk) / (2 * q) - kk;
    }
    measure(c, k);
    certify(c, [&] { return !perfect_tiling(c.graph, s, budget).has_value(); });
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

ChainReport chain_check(const Hypergraph& h, int s, std::uint64_t budget) {
  ChainReport r;
  r.contains = has_property(ThresholdKind::Ex, h, s, budget);
  r.covering = has_property(ThresholdKind::C, h, s, budget);
  r.perfect_tiling = has_property(ThresholdKind::T, h, s, budget);
  r.consistent = (!r.perfect_tiling || r.covering) && (!r.covering || r.contains);
  return r;
}

}  // namespace tightcycle
