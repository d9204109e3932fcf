#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tightcycle/certificate.hpp"
#include "tightcycle/constructions.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/fractional.hpp"
#include "tightcycle/io.hpp"
#include "tightcycle/paths.hpp"
#include "tightcycle/random_instances.hpp"
#include "tightcycle/search.hpp"
#include "tightcycle/thresholds.hpp"

using namespace tightcycle;
using nlohmann::json;

namespace {

enum Exit { kDecided = 0, kUsage = 1, kBudget = 2, kInvalid = 3 };

struct Global {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultNodeBudget;
};

std::string join(const std::vector<Vertex>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

void emit_cert(const std::string& path, const json& cert) {
  if (!path.empty()) write_text_file(path, cert.dump(2) + "\n");
}

VertexPartition blocks(std::size_t n, const std::vector<std::size_t>& sizes) {
  std::vector<std::vector<Vertex>> classes;
  Vertex next = 0;
  for (std::size_t size : sizes) {
    classes.emplace_back();
    for (std::size_t i = 0; i < size; ++i) classes.back().push_back(next++);
  }
  if (next > n) throw InputError("class sizes exceed the vertex count");
  return VertexPartition(n, std::move(classes));
}

// "12,23" -> {(1,2), (2,3)}; empty string means the complete class graph.
ClassGraph class_graph(int k, const std::string& text) {
  if (text.empty()) return ClassGraph::complete(k);
  if (text == "none") return ClassGraph(k);
  ClassGraph g(k);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.size() != 2 || !std::isdigit(static_cast<unsigned char>(item[0])) || !std::isdigit(static_cast<unsigned char>(item[1])))
      throw InputError("class graph edges are written as digit pairs like 12,23");
    g.add_edge(item[0] - '0', item[1] - '0');
  }
  return g;
}

std::pair<std::uint64_t, std::uint64_t> probability(const std::string& text) {
  const mpq_class p = parse_rational(text);
  if (p < 0 || p > 1) throw InputError("probability must lie in [0, 1]");
  return {p.get_num().get_ui(), p.get_den().get_ui()};
}

TightPath typed_edge(const Hypergraph& h, const VertexPartition& frame, const std::vector<Vertex>& given) {
  TightPath p;
  p.frame = frame;
  if (!given.empty()) {
    p.vertices = given;
  } else {
    for (int c = 1; c <= frame.num_classes(); ++c) p.vertices.push_back(frame.at(c).front());
  }
  validate_path(h, p);
  return p;
}

json extension_json(const ExtensionResult& r) {
  json out{{"path", r.path.vertices}, {"consumption", r.consumption}, {"new_outside", r.new_outside}};
  if (const auto t = end_type(r.path)) out["end_type"] = format_cycles(*t);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tightcycle: tight cycles, tilings and threshold experiments in k-graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Global g;
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_option("--jobs", g.jobs, "Worker threads for cover and thresholds")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Search node budget");

  std::string graph_path, cert_path, out_path;
  int k = 3, s = 4;

  // gen
  auto* gen = app.add_subcommand("gen", "Write a construction as an HG v1 (or JSON) graph");
  std::string construction, format = "hg", prob = "1/2", class_text;
  std::size_t a_size = 0, b_size = 0, n = 0;
  std::vector<std::size_t> sizes;
  int f_count = 0, e_count = 0, copies = 1;
  gen->add_option("construction", construction, "h0 | barrier | complete | partite | gadget-host | random | tile-f | tile-e | planted")
      ->required();
  gen->add_option("--k", k);
  gen->add_option("--s", s);
  gen->add_option("--a", a_size);
  gen->add_option("--b", b_size);
  gen->add_option("--n", n);
  gen->add_option("--sizes", sizes)->delimiter(',');
  gen->add_option("--class-graph", class_text, "Edges like 12,23 (default complete)");
  gen->add_option("--copies", copies, "How many times gadget-host is applied")->check(CLI::PositiveNumber);
  gen->add_option("--p", prob, "Edge (or noise) probability p/q");
  gen->add_option("--f", f_count);
  gen->add_option("--e", e_count);
  gen->add_option("--format", format)->check(CLI::IsMember({"hg", "json"}));
  gen->add_option("-o,--out", out_path);

  auto* find_cycle = app.add_subcommand("find-cycle", "Search a tight cycle C_s through a vertex");
  Vertex through = 0;
  find_cycle->add_option("--graph", graph_path)->required();
  find_cycle->add_option("--s", s)->required();
  find_cycle->add_option("--through", through)->required();
  find_cycle->add_option("--cert", cert_path);

  auto* cover = app.add_subcommand("cover", "Decide for every vertex whether a C_s passes through it");
  cover->add_option("--graph", graph_path)->required();
  cover->add_option("--s", s)->required();
  cover->add_option("--cert", cert_path);

  auto* tile = app.add_subcommand("tile", "Perfect (or maximum) C_s-tiling by exact cover");
  bool max_mode = false;
  tile->add_option("--graph", graph_path)->required();
  tile->add_option("--s", s)->required();
  tile->add_flag("--max", max_mode, "Maximum tiling instead of a perfect one");
  tile->add_option("--cert", cert_path);

  auto* fe_tile = app.add_subcommand("fe-tile", "Minimum-phi {F_s, E_s}-tiling for the tile family (k, s)");
  fe_tile->add_option("--graph", graph_path)->required();
  fe_tile->add_option("--k", k)->required();
  fe_tile->add_option("--s", s)->required();
  fe_tile->add_option("--cert", cert_path);

  auto* frac_tile = app.add_subcommand("frac-tile", "Exact phi* of the weighted fractional relaxation");
  std::string c_text;
  frac_tile->add_option("--graph", graph_path)->required();
  frac_tile->add_option("--k", k)->required();
  frac_tile->add_option("--s", s)->required();
  frac_tile->add_option("--c", c_text, "Weight floor p/q")->required();
  frac_tile->add_option("--cert", cert_path);

  std::vector<Vertex> path_given;
  std::string sigma_text, mode = "sigma";
  auto* extend = app.add_subcommand("extend-path", "Extend a typed path to end type sigma using a gadget");
  extend->add_option("--graph", graph_path)->required();
  extend->add_option("--sizes", sizes, "Class sizes of the partite frame")->delimiter(',')->required();
  extend->add_option("--sigma", sigma_text, "Target permutation in cycle notation, e.g. (1 2 3)")->required();
  extend->add_option("--mode", mode)->check(CLI::IsMember({"sigma", "cycle"}));
  extend->add_option("--path", path_given)->delimiter(',');
  extend->add_option("-o,--out", out_path);

  std::size_t extra = 0;
  auto* close = app.add_subcommand("close-cycle", "Close a typed path into a tight cycle");
  close->add_option("--graph", graph_path)->required();
  close->add_option("--sizes", sizes)->delimiter(',')->required();
  close->add_option("--extra", extra, "Number of vertices to append")->required();
  close->add_option("--sigma", sigma_text, "First steer the path to this end type");
  close->add_option("--path", path_given)->delimiter(',');
  close->add_option("--cert", cert_path);

  std::vector<Vertex> avoid_list;
  auto* gadget = app.add_subcommand("find-gadget", "Search a G-gadget in a partite host");
  gadget->add_option("--graph", graph_path)->required();
  gadget->add_option("--sizes", sizes)->delimiter(',')->required();
  gadget->add_option("--class-graph", class_text, "Edges like 12,23 (default complete)");
  gadget->add_option("--avoid", avoid_list)->delimiter(',');
  gadget->add_option("--cert", cert_path);

  auto* aux = app.add_subcommand("aux-bipartite", "Build the auxiliary graph on an edge X and test bipartiteness");
  std::vector<Vertex> x_edge;
  std::string gamma_text = "0";
  std::optional<int> ell;
  aux->add_option("--graph", graph_path)->required();
  aux->add_option("--s", s)->required();
  aux->add_option("--x", x_edge)->delimiter(',')->required();
  aux->add_option("--gamma", gamma_text);
  aux->add_option("--ell", ell);

  auto* thr = app.add_subcommand("thresholds", "Exact ex/c/t thresholds by exhaustive enumeration");
  std::vector<std::string> kinds{"ex"};
  std::vector<std::size_t> ns;
  std::vector<int> levels{1};
  bool unpruned = false;
  std::string cache_dir, csv_path;
  thr->add_option("--kind", kinds)->delimiter(',')->check(CLI::IsMember({"ex", "c", "t"}));
  thr->add_option("--k", k)->required();
  thr->add_option("--s", s)->required();
  thr->add_option("--n", ns)->delimiter(',')->required();
  thr->add_option("--i", levels)->delimiter(',');
  thr->add_flag("--unpruned", unpruned, "Plain sweep over all labelled graphs");
  thr->add_option("--cache", cache_dir);
  thr->add_option("--csv", csv_path);
  thr->add_option("--cert", cert_path, "Certificate file; with several rows a suffix _<row> is added");

  auto* verify = app.add_subcommand("verify", "Re-validate a certificate from scratch");
  std::string cert_in;
  verify->add_option("certificate", cert_in)->required();
  verify->add_option("--graph", graph_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kDecided : kUsage;
  }

  try {
    if (*gen) {
      Hypergraph h;
      std::vector<std::string> header;
      if (construction == "h0") {
        h = h0(k, a_size, b_size);
        header = {"construction: h0 k=" + std::to_string(k) + " |A|=" + std::to_string(a_size) + " |B|=" + std::to_string(b_size),
                  "edges: k-sets e with |e & A| of parity opposite to k; A = 0.." + std::to_string(a_size) + "-1, B follows"};
      } else if (construction == "barrier") {
        BarrierGraph b = tiling_barrier(k, s, n);
        h = b.graph;
        header = {"construction: tiling barrier k=" + std::to_string(k) + " s=" + std::to_string(s) + " n=" + std::to_string(n),
                  "|A|=" + std::to_string(b.a.size()) + " |B|=" + std::to_string(b.b.size()) + " |T|=" + std::to_string(b.t.size()) +
                      " laid out as A, B, T" + (b.degenerate ? " (degenerate, T empty)" : "")};
      } else if (construction == "complete") {
        SeededRng rng(0);
        h = random_hypergraph(k, n, 1, 1, rng);
        header = {"construction: complete K^" + std::to_string(k) + "_" + std::to_string(n), "every k-subset is an edge"};
      } else if (construction == "partite" || construction == "gadget-host") {
        PartitionedHost host = complete_partite(k, sizes);
        const ClassGraph cg = class_graph(k, class_text);
        if (construction == "gadget-host")
          for (int c = 0; c < copies; ++c) host = gadget_host(host, cg);
        h = host.graph;
        std::string shape;
        for (std::size_t z : sizes) shape += (shape.empty() ? "" : ",") + std::to_string(z);
        header = {"construction: " + construction + " k=" + std::to_string(k) + " sizes=" + shape,
                  "classes are contiguous blocks from vertex 0" +
                      (construction == "gadget-host" ? "; " + std::to_string(host.graph.n() - host.classes.members().count()) + " pendants follow" : std::string())};
      } else if (construction == "random") {
        const auto [num, den] = probability(prob);
        SeededRng rng(g.seed);
        h = random_hypergraph(k, n, num, den, rng);
        header = {"construction: random k=" + std::to_string(k) + " n=" + std::to_string(n) + " p=" + prob,
                  "seed=" + std::to_string(g.seed)};
      } else if (construction == "tile-f" || construction == "tile-e") {
        const TileFamily fam = tile_family(k, s);
        h = construction == "tile-f" ? fam.f_s.graph : fam.e_s.graph;
        std::string a;
        for (int x : fam.a) a += (a.empty() ? "" : ",") + std::to_string(x);
        header = {"construction: " + construction + " k=" + std::to_string(k) + " s=" + std::to_string(s),
                  "a=" + a + " ell=" + std::to_string(fam.ell) + " M=" + std::to_string(fam.big_m)};
      } else if (construction == "planted") {
        const auto [num, den] = probability(prob);
        SeededRng rng(g.seed);
        const TileFamily fam = tile_family(k, s);
        h = planted_instance(fam, n, f_count, e_count, num, den, rng).graph;
        header = {"construction: planted k=" + std::to_string(k) + " s=" + std::to_string(s) + " n=" + std::to_string(n) + " F=" +
                      std::to_string(f_count) + " E=" + std::to_string(e_count) + " noise=" + prob,
                  "seed=" + std::to_string(g.seed)};
      } else {
        throw InputError("unknown construction '" + construction + "'");
      }
      emit(out_path, format == "json" ? to_json(h).dump(2) + "\n" : format_hg(h, header));
      return kDecided;
    }

    if (*verify) {
      const json cert = json::parse(read_text_file(cert_in), nullptr, false);
      std::optional<Hypergraph> host;
      if (!graph_path.empty()) host = read_graph_file(graph_path);
      const VerifyOutcome v = verify_certificate(cert, host ? &*host : nullptr, g.budget);
      for (const auto& [name, pass] : v.checks) std::cout << (pass ? "pass " : "FAIL ") << name << "\n";
      if (!v.valid) {
        std::cout << "invalid: " << v.error << "\n";
        return kInvalid;
      }
      std::cout << "valid\n";
      return kDecided;
    }

    if (*thr) {
      ThresholdOptions o;
      o.pruned = !unpruned;
      o.jobs = g.jobs;
      o.cache_dir = cache_dir;
      o.budget = g.budget;
      std::string csv = threshold_csv_header() + "\n";
      std::size_t row = 0;
      const std::size_t rows = kinds.size() * ns.size() * levels.size();
      for (const auto& kind_text : kinds)
        for (std::size_t nn : ns)
          for (int i : levels) {
            const ThresholdResult r = brute_threshold(parse_threshold_kind(kind_text), k, s, nn, i, o);
            csv += threshold_csv_row(r) + "\n";
            if (!cert_path.empty())
              emit_cert(rows == 1 ? cert_path : cert_path + "_" + std::to_string(row), threshold_certificate(r, g.budget));
            ++row;
          }
      emit(csv_path, csv);
      return kDecided;
    }

    const Hypergraph h = read_graph_file(graph_path);

    if (*find_cycle) {
      const auto c = find_cycle_through(h, through, s, g.budget);
      if (c)
        std::cout << "cycle through " << through << ": " << join(c->vertices) << "\n";
      else
        std::cout << "no C_" << s << " through " << through << "\n";
      emit_cert(cert_path, cycle_certificate(h, s, {{through, c}}, g.budget));
      return kDecided;
    }

    if (*cover) {
      const CoveringReport r = covering_check(h, s, g.budget, static_cast<int>(g.jobs));
      std::vector<std::pair<Vertex, std::optional<TightCycle>>> results;
      for (Vertex v = 0; v < h.n(); ++v) results.emplace_back(v, r.witness[v]);
      std::cout << "covered " << r.covered.count() << " of " << h.n() << "\n";
      std::cout << "uncovered: " << join(r.uncovered.members()) << "\n";
      emit_cert(cert_path, cycle_certificate(h, s, results, g.budget));
      return kDecided;
    }

    if (*tile) {
      if (max_mode) {
        const Tiling t = max_tiling(h, s, g.budget);
        std::cout << "maximum tiling: " << t.pieces.size() << " copies\n";
        for (const auto& p : t.pieces) std::cout << "  " << join(p.image) << "\n";
        emit_cert(cert_path, max_tiling_certificate(h, s, t, g.budget));
      } else {
        const auto t = perfect_tiling(h, s, g.budget);
        if (t) {
          std::cout << "perfect tiling: " << t->pieces.size() << " copies\n";
          for (const auto& p : t->pieces) std::cout << "  " << join(p.image) << "\n";
        } else {
          std::cout << "no perfect C_" << s << "-tiling\n";
        }
        emit_cert(cert_path, perfect_tiling_certificate(h, s, t, g.budget));
      }
      return kDecided;
    }

    if (*fe_tile) {
      const TileFamily fam = tile_family(k, s);
      const FeTilingResult r = fe_tiling_min_phi(h, fam, g.budget);
      std::cout << "phi = " << format_rational(r.phi) << "  F=" << r.tiling.count(TileKind::F)
                << " E=" << r.tiling.count(TileKind::E) << (r.optimal ? "" : "  (budget reached, not proven optimal)") << "\n";
      emit_cert(cert_path, fe_tiling_certificate(h, fam, r, g.budget));
      return r.optimal ? kDecided : kBudget;
    }

    if (*frac_tile) {
      const TileFamily fam = tile_family(k, s);
      const mpq_class c = parse_rational(c_text);
      const PhiStarResult r = solve_phi_star(h, fam, c, g.budget);
      std::cout << "variables " << r.variables << " constraints " << r.constraints << " lp_solves " << r.lp_solves
                << " pivots " << r.pivots << "\n";
      std::cout << "phi* = " << format_rational(r.phi_star) << (r.optimal ? "" : "  (budget reached)") << "\n";
      for (const auto& [f, x] : r.tiling.fweights)
        std::cout << "  F* core " << join(f.core) << " pendants " << join(f.pendants) << " : " << format_rational(x) << "\n";
      for (const auto& [e, x] : r.tiling.eweights) std::cout << "  e " << join(e) << " : " << format_rational(x) << "\n";
      emit_cert(cert_path, frac_tiling_certificate(h, fam, c, r, g.budget));
      return r.optimal ? kDecided : kBudget;
    }

    const int kk = h.k();
    if (*extend) {
      const VertexPartition frame = blocks(h.n(), sizes);
      const TightPath p = typed_edge(h, frame, path_given);
      const Perm sigma = parse_cycles(sigma_text, kk);
      const auto w = find_gadget(h, frame, ClassGraph::complete(kk), VertexSet::of(h.n(), p.vertices), g.budget);
      if (!w) throw PreconditionError("no gadget for the complete class graph avoids the path");
      const ExtensionResult r = mode == "cycle" ? extend_by_cycle_perm(h, p, sigma, *w) : extend_to_sigma(h, p, sigma, *w);
      std::cout << "path: " << join(r.path.vertices) << "\n";
      if (const auto t = end_type(r.path)) std::cout << "end type: " << format_cycles(*t) << "\n";
      if (!out_path.empty()) emit(out_path, extension_json(r).dump(2) + "\n");
      return kDecided;
    }

    if (*close) {
      const VertexPartition frame = blocks(h.n(), sizes);
      TightPath p = typed_edge(h, frame, path_given);
      if (!sigma_text.empty()) {
        const auto w = find_gadget(h, frame, ClassGraph::complete(kk), VertexSet::of(h.n(), p.vertices), g.budget);
        if (!w) throw PreconditionError("no gadget for the complete class graph avoids the path");
        p = extend_to_sigma(h, p, parse_cycles(sigma_text, kk), *w).path;
      }
      const auto start = start_type(p);
      const auto end = end_type(p);
      if (!start || !end) throw InputError("the path has no start or end type in this frame");
      const ClassGraph cg = closing_graph(*start, *end, static_cast<int>(extra % static_cast<std::size_t>(kk)));
      const auto w = find_gadget(h, frame, cg, VertexSet::of(h.n(), p.vertices), g.budget);
      if (!w) throw PreconditionError("no gadget for the closing class graph avoids the path");
      const ClosingResult r = close_cycle(h, p, extra, *w);
      std::cout << "cycle (" << r.cycle.length() << "): " << join(r.sequence) << "\n";
      const int len = static_cast<int>(r.sequence.size());
      emit_cert(cert_path, cycle_certificate(h, len, {{p.vertices.front(), TightCycle{r.sequence}}}, g.budget));
      return kDecided;
    }

    if (*gadget) {
      const VertexPartition frame = blocks(h.n(), sizes);
      const ClassGraph cg = class_graph(kk, class_text);
      const VertexSet avoid = VertexSet::of(h.n(), avoid_list);
      const auto w = find_gadget(h, frame, cg, avoid, g.budget);
      if (w) {
        for (const auto& [ij, piece] : w->pieces)
          std::cout << "W" << ij.first << ij.second << ": " << join(piece.members) << " (outside " << piece.outside << ")\n";
      } else {
        std::cout << "no gadget\n";
      }
      emit_cert(cert_path, gadget_certificate(h, frame, cg, avoid, w, g.budget));
      return kDecided;
    }

    if (*aux) {
      const AuxReport r = bipartite_aux(h, x_edge, s, parse_rational(gamma_text), ell);
      std::cout << "hypothesis " << (r.hypothesis_holds ? "holds" : "fails") << "; threshold " << format_rational(r.threshold) << "\n";
      std::cout << "G_X edges:";
      for (const auto& [i, j] : r.graph_edges) std::cout << " " << i + 1 << j + 1;
      std::cout << "\n" << (r.bipartite ? "bipartite" : "not bipartite") << "\n";
      if (!r.bipartite) {
        std::cout << "odd cycle:";
        for (int i : r.odd_cycle) std::cout << " " << i + 1;
        std::cout << "\n";
      }
      return kDecided;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
