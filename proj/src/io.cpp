#include "tightcycle/io.hpp"

#include <fstream>
#include <sstream>

#include "tightcycle/errors.hpp"

namespace tightcycle {

Hypergraph parse_hg(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw InputError("HG v1: missing header line 'k n m'");
  std::istringstream header(lines[0]);
  long long k = 0, n = 0, m = 0;
  if (!(header >> k >> n >> m) || k < 1 || n < 0 || m < 0) throw InputError("HG v1: malformed header '" + lines[0] + "'");
  std::string extra;
  if (header >> extra) throw InputError("HG v1: trailing tokens in header");
  if (lines.size() != static_cast<std::size_t>(m) + 1)
    throw InputError("HG v1: header announces " + std::to_string(m) + " edges but " + std::to_string(lines.size() - 1) +
                     " edge lines follow");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    Edge e;
    long long v = 0;
    while (row >> v) {
      if (v < 0) throw InputError("HG v1: negative vertex on line " + std::to_string(i + 1));
      e.push_back(static_cast<Vertex>(v));
    }
    if (!row.eof()) throw InputError("HG v1: non-integer token on edge line " + std::to_string(i));
    edges.push_back(std::move(e));
  }
  return Hypergraph(static_cast<int>(k), static_cast<std::size_t>(n), std::move(edges));
}

std::string format_hg(const Hypergraph& h, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  out << h.k() << ' ' << h.n() << ' ' << h.num_edges() << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const Hypergraph& h) {
  return nlohmann::json{{"k", h.k()}, {"n", h.n()}, {"edges", h.edges()}};
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    return Hypergraph(j.at("k").get<int>(), j.at("n").get<std::size_t>(), j.at("edges").get<std::vector<Edge>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("graph JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

Hypergraph read_hg_file(const std::string& path) { return parse_hg(read_text_file(path)); }

Hypergraph read_graph_file(const std::string& path) {
  const auto text = read_text_file(path);
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '{') {
    try {
      return hypergraph_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("'" + path + "': " + e.what());
    }
  }
  return parse_hg(text);
}

}  // namespace tightcycle
