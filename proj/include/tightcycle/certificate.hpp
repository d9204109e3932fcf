#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "tightcycle/fractional.hpp"
#include "tightcycle/paths.hpp"
#include "tightcycle/search.hpp"
#include "tightcycle/thresholds.hpp"

namespace tightcycle {

inline constexpr int kCertificateSchema = 1;

// Every certificate is a JSON object
//   {schema_version, kind, params, graph, payload, checks, digest}
// where `graph` pins the input by a digest of its canonical HG text, `checks` lists the
// named assertions evaluated by the producer, and `digest` covers everything else, so a
// field edited into another well-formed value is still caught.

std::string graph_digest(const Hypergraph& h);

std::string format_rational(const mpq_class& q);
mpq_class parse_rational(const std::string& text);  // "p/q" or "p"; throws InputError

// Per-vertex search outcomes: a cycle through the vertex, or a certified absence.
nlohmann::json cycle_certificate(const Hypergraph& h, int s,
                                 const std::vector<std::pair<Vertex, std::optional<TightCycle>>>& results,
                                 std::uint64_t budget = kDefaultNodeBudget);

// Tiling claims: "perfect" (pieces, or none exists), "max" (an optimum), "fe" (minimum φ
// over {F_s, E_s}-tilings of the family's (k, s)).
nlohmann::json perfect_tiling_certificate(const Hypergraph& h, int s, const std::optional<Tiling>& t,
                                          std::uint64_t budget = kDefaultNodeBudget);
nlohmann::json max_tiling_certificate(const Hypergraph& h, int s, const Tiling& t,
                                      std::uint64_t budget = kDefaultNodeBudget);
nlohmann::json fe_tiling_certificate(const Hypergraph& h, const TileFamily& fam, const FeTilingResult& r,
                                     std::uint64_t budget = kDefaultNodeBudget);

nlohmann::json frac_tiling_certificate(const Hypergraph& h, const TileFamily& fam, const mpq_class& c,
                                       const PhiStarResult& r, std::uint64_t budget = kDefaultNodeBudget);

nlohmann::json gadget_certificate(const Hypergraph& h, const VertexPartition& frame, const ClassGraph& g,
                                  const VertexSet& avoid, const std::optional<Gadget>& w,
                                  std::uint64_t budget = kDefaultNodeBudget);

// Witness only; the graph is embedded.
nlohmann::json threshold_certificate(const ThresholdResult& r, std::uint64_t budget = kDefaultNodeBudget);

struct VerifyOutcome {
  bool valid = false;
  std::vector<std::pair<std::string, bool>> checks;
  std::string error;  // why the certificate was rejected, empty when valid
};

// Recomputes every check from the payload and `graph` (ignored for threshold
// certificates). Throws BudgetExceeded when a re-search runs out of budget.
VerifyOutcome verify_certificate(const nlohmann::json& cert, const Hypergraph* graph,
                                 std::uint64_t budget = kDefaultNodeBudget);

}  // namespace tightcycle
