#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tightcycle/hypergraph.hpp"

namespace tightcycle {

// "HG v1" text format: optional '#' comment lines, then `k n m`, then m edge lines.
Hypergraph parse_hg(std::string_view text);
Hypergraph read_hg_file(const std::string& path);

// Canonical HG v1 text. Each comment line is emitted as "# <line>" before the header.
std::string format_hg(const Hypergraph& h, const std::vector<std::string>& comments = {});

// JSON mirror {"k":..,"n":..,"edges":[[..],..]} with canonical edge order.
nlohmann::json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

// Reads either format, deciding by the first non-blank character.
Hypergraph read_graph_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace tightcycle
