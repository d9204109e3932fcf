#include "tightcycle/certificate.hpp"

#include <algorithm>
#include <cstdio>

#include "tightcycle/constructions.hpp"
#include "tightcycle/cycle.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/io.hpp"

namespace tightcycle {

using nlohmann::json;

namespace {

std::string fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

using Checks = std::vector<std::pair<std::string, bool>>;

json checks_json(const Checks& checks) {
  json out = json::array();
  for (const auto& [name, pass] : checks) out.push_back({{"name", name}, {"pass", pass}});
  return out;
}

std::string content_digest(json cert) {
  cert.erase("digest");
  return fnv1a(cert.dump());
}

json graph_ref(const Hypergraph& h) {
  return {{"k", h.k()}, {"n", h.n()}, {"edges", h.num_edges()}, {"digest", graph_digest(h)}};
}

json vertices_json(const VertexSet& s) {
  json out = json::array();
  s.for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

VertexSet vertex_set_from(const json& j, std::size_t n) {
  VertexSet s(n);
  for (const auto& v : j) {
    const auto x = v.get<Vertex>();
    if (x >= n) throw InputError("vertex out of range");
    s.insert(x);
  }
  return s;
}

const char* kind_name(TileKind k) { return k == TileKind::F ? "F" : k == TileKind::E ? "E" : "C"; }

TileKind tile_kind_from(const std::string& s) {
  if (s == "F") return TileKind::F;
  if (s == "E") return TileKind::E;
  if (s == "C") return TileKind::C;
  throw InputError("unknown tile kind " + s);
}

json tiling_json(const Tiling& t) {
  json out = json::array();
  for (const TilePiece& p : t.pieces) out.push_back({{"kind", kind_name(p.kind)}, {"image", p.image}});
  return out;
}

Tiling tiling_from(const json& j) {
  Tiling t;
  for (const auto& p : j)
    t.pieces.push_back(TilePiece{tile_kind_from(p.at("kind").get<std::string>()), p.at("image").get<std::vector<Vertex>>()});
  return t;
}

json finish(json cert, const Hypergraph* h, std::uint64_t budget);

json skeleton(const std::string& kind, json params, const Hypergraph* h, json payload) {
  json cert{{"schema_version", kCertificateSchema}, {"kind", kind}, {"params", std::move(params)}, {"payload", std::move(payload)}};
  if (h) cert["graph"] = graph_ref(*h);
  return cert;
}

// ---- per-kind checks; each returns the named assertions in a fixed order ----

Checks check_cycle(const json& cert, const Hypergraph& h, std::uint64_t budget) {
  const int s = cert.at("params").at("s").get<int>();
  Checks out;
  out.emplace_back("length_exceeds_k", s > h.k());
  if (s <= h.k()) return out;
  bool lengths = true, tight = true, through = true, absent = true;
  for (const auto& entry : cert.at("payload").at("results")) {
    const auto v = entry.at("vertex").get<Vertex>();
    if (v >= h.n()) throw InputError("vertex out of range");
    if (entry.at("cycle").is_null()) {
      absent = absent && !find_cycle_through(h, v, s, budget).has_value();
      continue;
    }
    const auto cyc = entry.at("cycle").get<std::vector<Vertex>>();
    lengths = lengths && cyc.size() == static_cast<std::size_t>(s);
    tight = tight && is_tight_cycle(h, cyc);
    through = through && std::find(cyc.begin(), cyc.end(), v) != cyc.end();
  }
  out.emplace_back("length", lengths);
  out.emplace_back("tight", tight);
  out.emplace_back("through_vertex", through);
  out.emplace_back("absence_confirmed", absent);
  return out;
}

Checks check_tiling(const json& cert, const Hypergraph& h, std::uint64_t budget) {
  const json& params = cert.at("params");
  const json& payload = cert.at("payload");
  const std::string mode = params.at("mode").get<std::string>();
  const int s = params.at("s").get<int>();
  Checks out;
  if (mode == "fe") {
    const TileFamily fam = tile_family(params.at("k").get<int>(), s);
    const Tiling t = tiling_from(payload.at("pieces"));
    const bool valid = validate_tiling(h, s, &fam, t) && t.count(TileKind::C) == 0;
    out.emplace_back("valid", valid);
    const mpq_class phi = integral_phi(h.n(), s, t.count(TileKind::F), t.count(TileKind::E));
    out.emplace_back("phi", phi == parse_rational(payload.at("phi").get<std::string>()));
    if (payload.at("optimal").get<bool>())
      out.emplace_back("optimal", fe_tiling_min_phi(h, fam, budget).phi == phi);
    return out;
  }
  if (mode == "perfect") {
    if (payload.at("exists").get<bool>()) {
      const Tiling t = tiling_from(payload.at("pieces"));
      out.emplace_back("valid", validate_tiling(h, s, nullptr, t));
      out.emplace_back("spanning", t.covered(h.n()).count() == h.n());
    } else {
      out.emplace_back("absence_confirmed", !perfect_tiling(h, s, budget).has_value());
    }
    return out;
  }
  if (mode == "max") {
    const Tiling t = tiling_from(payload.at("pieces"));
    out.emplace_back("valid", validate_tiling(h, s, nullptr, t));
    out.emplace_back("count", t.pieces.size() == payload.at("count").get<std::size_t>());
    out.emplace_back("optimal", max_tiling(h, s, budget).pieces.size() == t.pieces.size());
    return out;
  }
  throw InputError("unknown tiling mode " + mode);
}

FractionalTiling frac_from(const json& payload, const FracParams& p, std::size_t n) {
  FractionalTiling w = zero_tiling(p, n);
  for (const auto& f : payload.at("f"))
    w.fweights.emplace_back(FStarCopy{f.at("core").get<std::vector<Vertex>>(), f.at("pendants").get<std::vector<Vertex>>()},
                            parse_rational(f.at("weight").get<std::string>()));
  for (const auto& e : payload.at("e")) w.eweights.emplace_back(e.at("edge").get<Edge>(), parse_rational(e.at("weight").get<std::string>()));
  return w;
}

Checks check_frac(const json& cert, const Hypergraph& h, std::uint64_t budget) {
  const json& params = cert.at("params");
  const json& payload = cert.at("payload");
  const TileFamily fam = tile_family(params.at("k").get<int>(), params.at("s").get<int>());
  const mpq_class c = parse_rational(params.at("c").get<std::string>());
  const FractionalTiling w = frac_from(payload, FracParams::of(fam), h.n());
  Checks out;
  out.emplace_back("valid", is_valid(h, w));
  const auto mw = min_weight(w);
  out.emplace_back("min_weight", !mw || *mw >= c);
  const mpq_class stated = parse_rational(payload.at("phi_star").get<std::string>());
  out.emplace_back("phi", phi(w) == stated);
  if (payload.at("optimal").get<bool>()) out.emplace_back("optimal", solve_phi_star(h, fam, c, budget).phi_star == stated);
  return out;
}

Checks check_gadget(const json& cert, const Hypergraph& h, std::uint64_t budget) {
  const json& params = cert.at("params");
  const json& payload = cert.at("payload");
  const int k = params.at("k").get<int>();
  const VertexPartition frame(h.n(), payload.at("frame").get<std::vector<std::vector<Vertex>>>());
  ClassGraph g(k);
  for (const auto& e : params.at("class_graph")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  const VertexSet avoid = vertex_set_from(payload.at("avoid"), h.n());
  Checks out;
  out.emplace_back("frame_classes", frame.num_classes() == k);
  if (payload.at("gadget").is_null()) {
    out.emplace_back("absence_confirmed", !find_gadget(h, frame, g, avoid, budget).has_value());
    return out;
  }
  Gadget w;
  for (const auto& p : payload.at("gadget")) {
    GadgetPiece piece;
    piece.members = p.at("members").get<std::vector<Vertex>>();
    piece.outside = p.at("outside").get<Vertex>();
    w.pieces[{p.at("i").get<int>(), p.at("j").get<int>()}] = std::move(piece);
  }
  const GadgetReport r = verify_gadget(h, frame, g, w, avoid);
  out.emplace_back("w1", r.w1);
  out.emplace_back("w2", r.w2);
  out.emplace_back("w3", r.w3);
  out.emplace_back("w4", r.w4);
  out.emplace_back("covers_graph", r.covers_graph);
  return out;
}

Checks check_threshold(const json& cert, std::uint64_t budget) {
  const ThresholdResult r = threshold_from_json(cert.at("payload"));
  const json& params = cert.at("params");
  Checks out;
  out.emplace_back("params", params.at("kind").get<std::string>() == to_string(r.kind) && params.at("k").get<int>() == r.k &&
                                 params.at("s").get<int>() == r.s && params.at("n").get<std::size_t>() == r.n &&
                                 params.at("i").get<int>() == r.i && r.witness.k() == r.k && r.witness.n() == r.n);
  out.emplace_back("witness_degree", min_degree(r.witness, r.i).min_degree == r.value);
  if (r.trivial) {
    out.emplace_back("formula", r.kind == ThresholdKind::T && r.n % static_cast<std::size_t>(r.s) != 0 &&
                                    r.value == binomial(r.n - static_cast<std::size_t>(r.i), static_cast<std::size_t>(r.k - r.i)));
    return out;
  }
  out.emplace_back("witness_lacks_property", !has_property(r.kind, r.witness, r.s, budget));
  ThresholdOptions o;
  o.budget = budget;
  out.emplace_back("maximal", brute_threshold(r.kind, r.k, r.s, r.n, r.i, o).value == r.value);
  return out;
}

Checks run_checks(const json& cert, const Hypergraph* h, std::uint64_t budget) {
  if (cert.at("schema_version").get<int>() != kCertificateSchema) throw InputError("unsupported schema_version");
  const std::string kind = cert.at("kind").get<std::string>();
  if (kind == "threshold") return check_threshold(cert, budget);
  if (!h) throw InputError("a " + kind + " certificate needs its input graph");
  const json& ref = cert.at("graph");
  if (ref.at("digest").get<std::string>() != graph_digest(*h) || ref.at("k").get<int>() != h->k() ||
      ref.at("n").get<std::size_t>() != h->n() || ref.at("edges").get<std::size_t>() != h->num_edges())
    throw InputError("certificate refers to a different graph");
  if (kind == "cycle") return check_cycle(cert, *h, budget);
  if (kind == "tiling") return check_tiling(cert, *h, budget);
  if (kind == "frac-tiling") return check_frac(cert, *h, budget);
  if (kind == "gadget") return check_gadget(cert, *h, budget);
  throw InputError("unknown certificate kind " + kind);
}

json finish(json cert, const Hypergraph* h, std::uint64_t budget) {
  cert["checks"] = checks_json(run_checks(cert, h, budget));
  cert["digest"] = content_digest(cert);
  return cert;
}

}  // namespace

std::string graph_digest(const Hypergraph& h) { return fnv1a(format_hg(h)); }

std::string format_rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0) throw InputError("not a rational number: '" + text + "'");
  q.canonicalize();
  return q;
}

json cycle_certificate(const Hypergraph& h, int s, const std::vector<std::pair<Vertex, std::optional<TightCycle>>>& results,
                       std::uint64_t budget) {
  json entries = json::array();
  for (const auto& [v, c] : results)
    entries.push_back({{"vertex", v}, {"cycle", c ? json(c->vertices) : json(nullptr)}});
  return finish(skeleton("cycle", {{"k", h.k()}, {"s", s}}, &h, {{"results", entries}}), &h, budget);
}

json perfect_tiling_certificate(const Hypergraph& h, int s, const std::optional<Tiling>& t, std::uint64_t budget) {
  json payload{{"exists", t.has_value()}, {"pieces", t ? tiling_json(*t) : json::array()}};
  return finish(skeleton("tiling", {{"mode", "perfect"}, {"k", h.k()}, {"s", s}}, &h, payload), &h, budget);
}

json max_tiling_certificate(const Hypergraph& h, int s, const Tiling& t, std::uint64_t budget) {
  json payload{{"count", t.pieces.size()}, {"pieces", tiling_json(t)}};
  return finish(skeleton("tiling", {{"mode", "max"}, {"k", h.k()}, {"s", s}}, &h, payload), &h, budget);
}

json fe_tiling_certificate(const Hypergraph& h, const TileFamily& fam, const FeTilingResult& r, std::uint64_t budget) {
  json payload{{"pieces", tiling_json(r.tiling)},
               {"phi", format_rational(r.phi)},
               {"optimal", r.optimal},
               {"f_count", r.tiling.count(TileKind::F)},
               {"e_count", r.tiling.count(TileKind::E)}};
  return finish(skeleton("tiling", {{"mode", "fe"}, {"k", fam.k}, {"s", fam.s}}, &h, payload), &h, budget);
}

json frac_tiling_certificate(const Hypergraph& h, const TileFamily& fam, const mpq_class& c, const PhiStarResult& r,
                             std::uint64_t budget) {
  json f = json::array();
  for (const auto& [copy, x] : r.tiling.fweights)
    f.push_back({{"core", copy.core}, {"pendants", copy.pendants}, {"weight", format_rational(x)}});
  json e = json::array();
  for (const auto& [edge, x] : r.tiling.eweights) e.push_back({{"edge", edge}, {"weight", format_rational(x)}});
  json payload{{"f", f},
               {"e", e},
               {"phi_star", format_rational(r.phi_star)},
               {"optimal", r.optimal},
               {"variables", r.variables},
               {"constraints", r.constraints}};
  return finish(skeleton("frac-tiling", {{"k", fam.k}, {"s", fam.s}, {"c", format_rational(c)}}, &h, payload), &h, budget);
}

json gadget_certificate(const Hypergraph& h, const VertexPartition& frame, const ClassGraph& g, const VertexSet& avoid,
                        const std::optional<Gadget>& w, std::uint64_t budget) {
  json pieces = nullptr;
  if (w) {
    pieces = json::array();
    for (const auto& [ij, piece] : w->pieces)
      pieces.push_back({{"i", ij.first}, {"j", ij.second}, {"members", piece.members}, {"outside", piece.outside}});
  }
  json cg = json::array();
  for (const auto& [i, j] : g.edges()) cg.push_back({i, j});
  json payload{{"frame", frame.classes()}, {"avoid", vertices_json(avoid)}, {"gadget", pieces}};
  return finish(skeleton("gadget", {{"k", g.k()}, {"class_graph", cg}}, &h, payload), &h, budget);
}

json threshold_certificate(const ThresholdResult& r, std::uint64_t budget) {
  json params{{"kind", to_string(r.kind)}, {"k", r.k}, {"s", r.s}, {"n", r.n}, {"i", r.i}};
  return finish(skeleton("threshold", params, nullptr, to_json(r)), nullptr, budget);
}

VerifyOutcome verify_certificate(const json& cert, const Hypergraph* graph, std::uint64_t budget) {
  VerifyOutcome out;
  try {
    if (!cert.is_object()) throw InputError("certificate is not a JSON object");
    if (cert.at("digest").get<std::string>() != content_digest(cert)) throw InputError("content digest mismatch");
    json body = cert;
    body.erase("checks");
    body.erase("digest");
    out.checks = run_checks(body, graph, budget);
    Checks stated;
    for (const auto& c : cert.at("checks")) stated.emplace_back(c.at("name").get<std::string>(), c.at("pass").get<bool>());
    if (stated != out.checks) throw InputError("stated checks differ from the recomputed ones");
    for (const auto& [name, pass] : out.checks)
      if (!pass) throw InputError("check failed: " + name);
    out.valid = true;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const std::exception& ex) {
    out.valid = false;
    out.error = ex.what();
  }
  return out;
}

}  // namespace tightcycle
