#include "tightcycle/fractional.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "tightcycle/errors.hpp"
#include "tightcycle/lp.hpp"

namespace tightcycle {

FracParams FracParams::of(const TileFamily& fam) {
  return FracParams{fam.k, fam.s, fam.ell, fam.big_m, fam.a, fam.g_s};
}

long alpha(const FracParams& p, const FStarCopy& f, Vertex v) {
  for (std::size_t i = 0; i < f.core.size(); ++i)
    if (f.core[i] == v) return p.a[i];
  return std::find(f.pendants.begin(), f.pendants.end(), v) != f.pendants.end() ? 1 : 0;
}

namespace {

Edge without(const std::vector<Vertex>& core, std::size_t skip, Vertex extra) {
  Edge e;
  for (std::size_t i = 0; i < core.size(); ++i)
    if (i != skip) e.push_back(core[i]);
  e.push_back(extra);
  return e;
}

mpq_class power_inverse(long base, int exponent) {
  mpz_class d = 1;
  for (int i = 0; i < exponent; ++i) d *= base;
  return mpq_class(mpz_class(1), d);
}

std::vector<std::vector<Vertex>> image_classes(const PartitionedHost& pattern, const std::vector<Vertex>& image) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& cls : pattern.classes.classes()) {
    out.emplace_back();
    for (Vertex p : cls) out.back().push_back(image[p]);
  }
  return out;
}

template <class F>
void for_each_transversal(const std::vector<std::vector<Vertex>>& classes, F&& f) {
  std::vector<Vertex> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      f(cur);
      return;
    }
    for (Vertex v : classes[c]) {
      cur.push_back(v);
      rec(c + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

bool is_fstar_copy(const Hypergraph& h, const FracParams& p, const FStarCopy& f) {
  if (f.core.size() != static_cast<std::size_t>(p.k) || f.pendants.size() != p.g_s.size()) return false;
  VertexSet seen(h.n());
  for (const auto* part : {&f.core, &f.pendants})
    for (Vertex v : *part) {
      if (v >= h.n() || seen.contains(v)) return false;
      seen.insert(v);
    }
  if (!h.has_edge(f.core)) return false;
  for (std::size_t q = 0; q < p.g_s.size(); ++q) {
    const auto [i, j] = p.g_s.edges()[q];
    if (!h.has_edge(without(f.core, static_cast<std::size_t>(i - 1), f.pendants[q]))) return false;
    if (!h.has_edge(without(f.core, static_cast<std::size_t>(j - 1), f.pendants[q]))) return false;
  }
  return true;
}

mpq_class FractionalTiling::f_total() const {
  mpq_class t = 0;
  for (const auto& [f, w] : fweights) t += w;
  return t;
}

mpq_class FractionalTiling::e_total() const {
  mpq_class t = 0;
  for (const auto& [e, w] : eweights) t += w;
  return t;
}

FractionalTiling zero_tiling(const FracParams& p, std::size_t n) { return FractionalTiling{p, n, {}, {}}; }

std::vector<mpq_class> vertex_loads(const FractionalTiling& w) {
  std::vector<mpq_class> load(w.n, mpq_class(0));
  for (const auto& [f, x] : w.fweights) {
    for (std::size_t i = 0; i < f.core.size(); ++i) load[f.core[i]] += x * w.params.a[i];
    for (Vertex y : f.pendants) load[y] += x;
  }
  for (const auto& [e, x] : w.eweights)
    for (Vertex v : e) load[v] += x * w.params.big_m;
  return load;
}

mpq_class vertex_weight(const FractionalTiling& w, Vertex v) {
  if (v >= w.n) throw InputError("vertex out of range");
  return vertex_loads(w)[v];
}

mpq_class phi(const FractionalTiling& w) {
  if (w.n == 0) throw InputError("phi is undefined on the empty vertex set");
  mpq_class r = 1 - mpq_class(w.params.s) * (w.f_total() + mpq_class(3, 5) * w.e_total()) / static_cast<long>(w.n);
  r.canonicalize();
  return r;
}

std::optional<mpq_class> min_weight(const FractionalTiling& w) {
  std::optional<mpq_class> best;
  auto offer = [&](const mpq_class& x) {
    if (sgn(x) != 0 && (!best || x < *best)) best = x;
  };
  for (const auto& [f, x] : w.fweights) {
    for (int a : w.params.a) offer(x * a);
    if (!f.pendants.empty()) offer(x);
  }
  for (const auto& [e, x] : w.eweights) offer(x * w.params.big_m);
  return best;
}

VertexSet saturated(const FractionalTiling& w) {
  std::vector<mpq_class> pend(w.n, mpq_class(0));
  for (const auto& [f, x] : w.fweights)
    for (Vertex y : f.pendants) pend[y] += x;
  VertexSet out(w.n);
  for (Vertex v = 0; v < w.n; ++v)
    if (pend[v] == 1) out.insert(v);
  return out;
}

VertexSet uncovered(const FractionalTiling& w) {
  const auto load = vertex_loads(w);
  VertexSet out(w.n);
  for (Vertex v = 0; v < w.n; ++v)
    if (sgn(load[v]) == 0) out.insert(v);
  return out;
}

bool is_valid(const Hypergraph& h, const FractionalTiling& w, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (w.n != h.n()) return fail("vertex count differs from the host");
  for (const auto& [f, x] : w.fweights) {
    if (sgn(x) < 0 || x > 1) return fail("F* weight outside [0, 1]");
    if (!is_fstar_copy(h, w.params, f)) return fail("weighted F* is not a copy in the host");
  }
  for (const auto& [e, x] : w.eweights) {
    if (sgn(x) < 0 || x > 1) return fail("edge weight outside [0, 1]");
    if (!h.has_edge(e)) return fail("weighted edge is not an edge of the host");
  }
  const auto load = vertex_loads(w);
  for (Vertex v = 0; v < w.n; ++v)
    if (load[v] > 1) return fail("vertex " + std::to_string(v) + " is overloaded");
  return true;
}

VertexSet saturated(const Tiling& t, const TileFamily& fam, std::size_t n) {
  VertexSet out(n);
  for (const auto& piece : t.pieces)
    if (piece.kind == TileKind::F)
      for (Vertex p : fam.f_s.pendants) out.insert(piece.image[p]);
  return out;
}

VertexSet uncovered(const Tiling& t, std::size_t n) { return VertexSet::full(n) - t.covered(n); }

FractionalTiling from_integral(const Hypergraph& h, const TileFamily& fam, const Tiling& t) {
  if (!validate_tiling(h, fam.s, &fam, t)) throw InputError("not a valid {F_s, E_s}-tiling of the host");
  const FracParams params = FracParams::of(fam);
  FractionalTiling w = zero_tiling(params, h.n());

  // Pendant order follows g_s.edges().
  std::vector<Vertex> pendant_pattern(params.g_s.size());
  for (std::size_t q = 0; q < fam.f_s.pendants.size(); ++q) {
    const auto it = std::find(params.g_s.edges().begin(), params.g_s.edges().end(), fam.f_s.pendant_edges[q]);
    pendant_pattern[static_cast<std::size_t>(it - params.g_s.edges().begin())] = fam.f_s.pendants[q];
  }
  mpz_class a_prod = 1;
  for (int ai : params.a) a_prod *= ai;
  const mpq_class f_weight(mpz_class(1), a_prod);
  const mpq_class e_weight = power_inverse(params.big_m, params.k);

  std::map<Edge, mpq_class> edges;
  for (const auto& piece : t.pieces) {
    if (piece.kind == TileKind::F) {
      std::vector<Vertex> pendants;
      for (Vertex p : pendant_pattern) pendants.push_back(piece.image[p]);
      for_each_transversal(image_classes(fam.f_s, piece.image),
                           [&](const std::vector<Vertex>& core) { w.fweights.push_back({FStarCopy{core, pendants}, f_weight}); });
    } else {
      for_each_transversal(image_classes(fam.e_s, piece.image), [&](const std::vector<Vertex>& core) {
        Edge e = core;
        std::sort(e.begin(), e.end());
        edges[e] = e_weight;
      });
    }
  }
  for (auto& [e, x] : edges) w.eweights.emplace_back(e, x);
  return w;
}

ConversionReport check_conversion(const Hypergraph& h, const TileFamily& fam, const Tiling& t,
                                  const FractionalTiling& w) {
  ConversionReport r;
  const std::size_t n = h.n();
  const long f_count = static_cast<long>(t.count(TileKind::F));
  const long e_count = static_cast<long>(t.count(TileKind::E));
  r.valid = is_valid(h, w);
  r.phi_equal = phi(w) == integral_phi(n, fam.s, static_cast<std::size_t>(f_count), static_cast<std::size_t>(e_count));
  r.f_count_equal = w.f_total() == f_count;
  r.e_count_equal = w.e_total() == e_count;
  r.sets_preserved = saturated(w) == saturated(t, fam, n) && uncovered(w) == uncovered(t, n);

  mpz_class a_prod = 1;
  for (int ai : fam.a) a_prod *= ai;
  const mpq_class f_unit(mpz_class(1), a_prod);
  r.f_quantized = std::all_of(w.fweights.begin(), w.fweights.end(),
                              [&](const auto& fx) { return sgn(fx.second) == 0 || fx.second == f_unit; });
  const mpq_class e_unit = power_inverse(fam.big_m, fam.k);
  r.e_quantized = std::all_of(w.eweights.begin(), w.eweights.end(),
                              [&](const auto& ex) { return sgn(ex.second) == 0 || ex.second == e_unit; });
  std::map<Edge, mpq_class> weight_of(w.eweights.begin(), w.eweights.end());
  for (const auto& piece : t.pieces) {
    if (piece.kind != TileKind::E) continue;
    for (const Edge& pe : fam.e_s.graph.edges()) {
      Edge e;
      for (Vertex p : pe) e.push_back(piece.image[p]);
      std::sort(e.begin(), e.end());
      const auto it = weight_of.find(e);
      if (it == weight_of.end() || it->second != e_unit) r.e_quantized = false;
    }
  }
  const auto mw = min_weight(w);
  r.min_weight_floor = !mw || *mw >= power_inverse(fam.s, fam.k);
  const auto load = vertex_loads(w);
  r.loads_integral = std::all_of(load.begin(), load.end(), [](const mpq_class& x) { return sgn(x) == 0 || x == 1; });
  return r;
}

PackingReport check_packing(const FractionalTiling& w, const std::optional<VertexSet>& s_prime) {
  PackingReport r;
  const FracParams& p = w.params;
  const mpq_class used = p.s * w.f_total() + mpq_class(p.k * p.big_m) * w.e_total();
  r.capacity = used <= static_cast<long>(w.n);
  const VertexSet sat = saturated(w);
  r.saturated_bound = mpq_class(static_cast<long>(sat.count())) <= mpq_class(p.ell * static_cast<long>(w.n), p.s);
  mpq_class total = 0;
  for (const auto& x : vertex_loads(w)) total += x;
  r.conservation = total == used;
  if (s_prime) {
    if (!s_prime->subset_of(sat)) throw InputError("S' must consist of saturated vertices");
    r.pair_applicable = mpq_class(static_cast<long>(s_prime->count())) > mpq_class(static_cast<long>(w.n), p.s);
    if (r.pair_applicable)
      for (const auto& [f, x] : w.fweights) {
        if (sgn(x) <= 0) continue;
        const auto hits = std::count_if(f.pendants.begin(), f.pendants.end(), [&](Vertex y) { return s_prime->contains(y); });
        if (hits >= 2) {
          r.pair_witness = f;
          break;
        }
      }
  }
  return r;
}

std::vector<FStarCopy> enumerate_fstar(const Hypergraph& h, const FracParams& p, std::uint64_t budget) {
  if (h.k() != p.k) throw InputError("host uniformity differs from the tile family");
  NodeBudget nodes(budget);
  using Key = std::pair<std::vector<std::pair<Vertex, int>>, std::vector<Vertex>>;
  std::set<Key> seen;
  std::vector<FStarCopy> out;
  const std::size_t ell = p.g_s.size();

  for (const Edge& e : h.edges()) {
    std::vector<Vertex> core = e;
    do {
      nodes.tick();
      std::vector<VertexSet> cand;
      for (const auto& [i, j] : p.g_s.edges()) {
        auto completion = [&](int skip) {
          Edge rest;
          for (int c = 0; c < p.k; ++c)
            if (c != skip - 1) rest.push_back(core[static_cast<std::size_t>(c)]);
          std::sort(rest.begin(), rest.end());
          return h.completions(rest);
        };
        VertexSet both = completion(i) & completion(j);
        for (Vertex v : core) both.erase(v);
        cand.push_back(std::move(both));
      }
      if (std::any_of(cand.begin(), cand.end(), [](const VertexSet& c) { return c.empty(); })) continue;
      std::vector<Vertex> pend;
      VertexSet taken(h.n());
      std::function<void(std::size_t)> pick = [&](std::size_t q) {
        nodes.tick();
        if (q == ell) {
          Key key;
          for (std::size_t i = 0; i < core.size(); ++i) key.first.emplace_back(core[i], p.a[i]);
          std::sort(key.first.begin(), key.first.end());
          key.second = pend;
          std::sort(key.second.begin(), key.second.end());
          if (seen.insert(std::move(key)).second) out.push_back(FStarCopy{core, pend});
          return;
        }
        cand[q].for_each([&](Vertex y) {
          if (taken.contains(y)) return;
          taken.insert(y);
          pend.push_back(y);
          pick(q + 1);
          pend.pop_back();
          taken.erase(y);
        });
      };
      pick(0);
    } while (std::next_permutation(core.begin(), core.end()));
  }
  return out;
}

namespace {

struct Column {
  mpq_class objective;
  mpq_class floor;  // smallest admissible nonzero value
  std::vector<std::pair<Vertex, long>> alpha;
};

class FloorSearch {
 public:
  FloorSearch(const std::vector<Column>& cols, const std::vector<bool>& dead, std::size_t n, NodeBudget& budget)
      : cols_(cols), n_(n), budget_(budget), mode_(cols.size(), Mode::Free) {
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (dead[j]) mode_[j] = Mode::Zero;
  }

  void run() { branch(); }

  mpq_class best = 0;
  std::vector<mpq_class> best_x;
  std::uint64_t solves = 0;
  std::uint64_t pivots = 0;
  std::size_t constraints = 0;

 private:
  enum class Mode { Free, Zero, AtLeastFloor };

  void branch() {
    budget_.tick();
    // Variables in use and their LP indices.
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < cols_.size(); ++j)
      if (mode_[j] != Mode::Zero) active.push_back(j);
    LinearProgram lp;
    lp.num_vars = active.size();
    std::vector<long> row_of(n_, -1);
    mpq_class shift = 0;
    for (std::size_t c = 0; c < active.size(); ++c) {
      const Column& col = cols_[active[c]];
      lp.objective.push_back(col.objective);
      for (const auto& [v, a] : col.alpha) {
        if (row_of[v] < 0) {
          row_of[v] = static_cast<long>(lp.rows.size());
          lp.rows.emplace_back();
          lp.rhs.emplace_back(1);
        }
        lp.rows[static_cast<std::size_t>(row_of[v])].emplace_back(c, mpq_class(a));
      }
    }
    for (std::size_t c = 0; c < active.size(); ++c) {
      const Column& col = cols_[active[c]];
      if (mode_[active[c]] != Mode::AtLeastFloor) continue;
      shift += col.objective * col.floor;
      for (const auto& [v, a] : col.alpha) lp.rhs[static_cast<std::size_t>(row_of[v])] -= col.floor * a;
    }
    constraints = std::max(constraints, lp.rows.size());
    const LpSolution sol = solve_lp(lp);
    ++solves;
    pivots += sol.pivots;
    if (sol.status != LpStatus::Optimal) return;
    const mpq_class value = sol.value + shift;
    if (value <= best) return;

    std::vector<mpq_class> x(cols_.size(), mpq_class(0));
    for (std::size_t c = 0; c < active.size(); ++c)
      x[active[c]] = sol.x[c] + (mode_[active[c]] == Mode::AtLeastFloor ? cols_[active[c]].floor : mpq_class(0));
    // Zeroing every sub-floor value only lowers loads, so it is a feasible incumbent.
    {
      std::vector<mpq_class> rounded = x;
      mpq_class v = 0;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (rounded[j] < cols_[j].floor) rounded[j] = 0;
        v += cols_[j].objective * rounded[j];
      }
      if (v > best || best_x.empty()) {
        best = v;
        best_x = std::move(rounded);
      }
    }
    if (value <= best) return;
    // Branch on the first variable strictly between 0 and its floor.
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (mode_[j] != Mode::Free || sgn(x[j]) == 0 || x[j] >= cols_[j].floor) continue;
      mode_[j] = Mode::AtLeastFloor;
      branch();
      mode_[j] = Mode::Zero;
      branch();
      mode_[j] = Mode::Free;
      return;
    }
    best = value;
    best_x = std::move(x);
  }

  const std::vector<Column>& cols_;
  std::size_t n_;
  NodeBudget& budget_;
  std::vector<Mode> mode_;
};

}  // namespace

PhiStarResult solve_phi_star(const Hypergraph& h, const TileFamily& fam, const mpq_class& c, std::uint64_t budget) {
  if (sgn(c) <= 0) throw InputError("the weight floor c must be positive");
  if (h.n() == 0) throw InputError("phi is undefined on the empty vertex set");
  const FracParams params = FracParams::of(fam);
  const std::vector<FStarCopy> copies = enumerate_fstar(h, params, budget);

  long f_min_alpha = *std::min_element(params.a.begin(), params.a.end());
  if (params.ell > 0) f_min_alpha = std::min(f_min_alpha, 1L);
  std::vector<Column> cols;
  for (const FStarCopy& f : copies) {
    Column col{1, c / f_min_alpha, {}};
    for (std::size_t i = 0; i < f.core.size(); ++i) col.alpha.emplace_back(f.core[i], params.a[i]);
    for (Vertex y : f.pendants) col.alpha.emplace_back(y, 1);
    cols.push_back(std::move(col));
  }
  for (const Edge& e : h.edges()) {
    Column col{mpq_class(3, 5), c / params.big_m, {}};
    for (Vertex v : e) col.alpha.emplace_back(v, params.big_m);
    cols.push_back(std::move(col));
  }
  for (auto& col : cols) col.floor.canonicalize();
  // A column that overloads a vertex already at its floor can only be zero.
  std::vector<bool> dead(cols.size(), false);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [v, a] : cols[j].alpha)
      if (cols[j].floor * a > 1) dead[j] = true;

  NodeBudget nodes(budget);
  FloorSearch search(cols, dead, h.n(), nodes);
  PhiStarResult res;
  try {
    search.run();
    res.optimal = true;
  } catch (const BudgetExceeded&) {
    res.optimal = false;
  }

  res.tiling = zero_tiling(params, h.n());
  for (std::size_t j = 0; j < search.best_x.size(); ++j) {
    if (sgn(search.best_x[j]) == 0) continue;
    if (j < copies.size())
      res.tiling.fweights.emplace_back(copies[j], search.best_x[j]);
    else
      res.tiling.eweights.emplace_back(h.edges()[j - copies.size()], search.best_x[j]);
  }
  res.phi_star = phi(res.tiling);
  res.variables = cols.size();
  res.constraints = search.constraints;
  res.lp_solves = search.solves;
  res.pivots = search.pivots;
  return res;
}

}  // namespace tightcycle
