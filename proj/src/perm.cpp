#include "tightcycle/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "tightcycle/errors.hpp"

namespace tightcycle {

Perm::Perm(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size() + 1, false);
  for (int v : image_) {
    if (v < 1 || v > k() || seen[static_cast<std::size_t>(v)])
      throw InputError("not a permutation of [" + std::to_string(k()) + "]");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Perm Perm::identity(int k) {
  std::vector<int> image(static_cast<std::size_t>(k));
  std::iota(image.begin(), image.end(), 1);
  return Perm(std::move(image));
}

bool Perm::is_identity() const {
  for (int i = 1; i <= k(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.k() != b.k())
    throw InputError("cannot compose permutations of [" + std::to_string(a.k()) + "] and [" + std::to_string(b.k()) + "]");
  std::vector<int> image(static_cast<std::size_t>(a.k()));
  for (int i = 1; i <= a.k(); ++i) image[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Perm(std::move(image));
}

Perm inverse(const Perm& a) {
  std::vector<int> image(static_cast<std::size_t>(a.k()));
  for (int i = 1; i <= a.k(); ++i) image[static_cast<std::size_t>(a(i) - 1)] = i;
  return Perm(std::move(image));
}

Perm tau(int k) { return tau_power(k, 1); }

Perm tau_power(int k, int r) {
  if (k < 1) throw InputError("k must be positive");
  const int shift = ((r % k) + k) % k;
  std::vector<int> image(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) image[static_cast<std::size_t>(i - 1)] = (i - 1 + shift) % k + 1;
  return Perm(std::move(image));
}

Perm cycle_perm(int k, const std::vector<int>& cycle) {
  auto image = Perm::identity(k).image();
  std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    const int c = cycle[j];
    if (c < 1 || c > k || seen[static_cast<std::size_t>(c)]) throw InputError("invalid cycle entry " + std::to_string(c));
    seen[static_cast<std::size_t>(c)] = true;
    image[static_cast<std::size_t>(c - 1)] = cycle[(j + 1) % cycle.size()];
  }
  return Perm(std::move(image));
}

Perm transposition(int k, int i, int j) { return cycle_perm(k, {i, j}); }

std::vector<Perm> all_perms(int k) {
  auto image = Perm::identity(k).image();
  std::vector<Perm> out;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

ClassGraph::ClassGraph(int k, std::vector<std::pair<int, int>> edges) : k_(k) {
  for (auto [i, j] : edges) add_edge(i, j);
}

ClassGraph ClassGraph::complete(int k) {
  ClassGraph g(k);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) g.add_edge(i, j);
  return g;
}

bool ClassGraph::has_edge(int i, int j) const {
  const std::pair<int, int> e{std::min(i, j), std::max(i, j)};
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

void ClassGraph::add_edge(int i, int j) {
  if (i == j || i < 1 || j < 1 || i > k_ || j > k_)
    throw InputError("invalid class-graph edge " + std::to_string(i) + "-" + std::to_string(j));
  const std::pair<int, int> e{std::min(i, j), std::max(i, j)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) edges_.insert(it, e);
}

void ClassGraph::remove_edge(int i, int j) {
  const std::pair<int, int> e{std::min(i, j), std::max(i, j)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) edges_.erase(it);
}

bool ClassGraph::contains(const ClassGraph& other) const {
  return std::includes(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end());
}

ClassGraph graph_minus(const ClassGraph& g, const ClassGraph& h) {
  ClassGraph out(g.k());
  for (auto [i, j] : g.edges())
    if (!h.has_edge(i, j)) out.add_edge(i, j);
  return out;
}

ClassGraph relabel(const ClassGraph& g, const Perm& p) {
  ClassGraph out(g.k());
  for (auto [i, j] : g.edges()) out.add_edge(p(i), p(j));
  return out;
}

CyclicDecomposition decompose(const Perm& a) {
  CyclicDecomposition d;
  d.k = a.k();
  std::vector<bool> seen(static_cast<std::size_t>(a.k()) + 1, false);
  // Scanning minima upward yields cycles ordered by their minimum.
  for (int start = 1; start <= a.k(); ++start) {
    if (seen[static_cast<std::size_t>(start)] || a(start) == start) continue;
    std::vector<int> cycle;
    int v = a(start);
    while (true) {
      cycle.push_back(v);
      seen[static_cast<std::size_t>(v)] = true;
      if (v == start) break;
      v = a(v);
    }
    d.cycles.push_back(std::move(cycle));
  }
  return d;
}

Perm recompose(const CyclicDecomposition& d) {
  Perm p = Perm::identity(d.k);
  for (const auto& c : d.cycles) p = compose(p, cycle_perm(d.k, c));
  return p;
}

SigmaStats sigma_stats(const Perm& a) {
  const auto k = static_cast<std::size_t>(a.k());
  SigmaStats st;
  st.g_sigma = ClassGraph(a.k());
  st.x_flags.assign(k, false);
  st.y_flags.assign(k, false);
  const auto d = decompose(a);
  st.t = static_cast<int>(d.cycles.size());
  if (d.cycles.empty()) return st;
  st.m = d.cycles.back().back();
  for (const auto& c : d.cycles) {
    for (std::size_t p = 0; p + 1 < c.size(); ++p) {
      st.g_sigma.add_edge(c[p], c[p + 1]);
      st.x_flags[static_cast<std::size_t>(c[p] - 1)] = true;
    }
  }
  for (int j = 1; j < st.m; ++j) st.y_flags[static_cast<std::size_t>(a(j) - 1)] = true;
  return st;
}

std::vector<bool> z_flags(const Perm& a, int r) {
  if (r < 0 || r >= a.k()) throw InputError("z_flags requires 0 <= r < k, got r = " + std::to_string(r));
  std::vector<bool> z(static_cast<std::size_t>(a.k()), false);
  for (int j = a.k() - r + 1; j <= a.k(); ++j) z[static_cast<std::size_t>(a(j) - 1)] = true;
  return z;
}

std::string format_cycles(const Perm& a) {
  const auto d = decompose(a);
  if (d.cycles.empty()) return "id";
  std::ostringstream out;
  for (const auto& c : d.cycles) {
    out << '(';
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << ')';
  }
  return out.str();
}

Perm parse_cycles(std::string_view text, int k) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) && c != ' '; }), s.end());
  const auto first = s.find_first_not_of(' ');
  if (first == std::string::npos) throw InputError("empty permutation text");
  const auto last = s.find_last_not_of(' ');
  s = s.substr(first, last - first + 1);
  if (s == "id" || s == "()") return Perm::identity(k);
  Perm p = Perm::identity(k);
  std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == ' ') {
      ++pos;
      continue;
    }
    if (s[pos] != '(') throw InputError("expected '(' in permutation '" + s + "'");
    const auto close = s.find(')', pos);
    if (close == std::string::npos) throw InputError("unbalanced '(' in permutation '" + s + "'");
    std::istringstream body(s.substr(pos + 1, close - pos - 1));
    std::vector<int> cycle;
    std::string token;
    while (body >> token) {
      int v = 0;
      try {
        std::size_t consumed = 0;
        v = std::stoi(token, &consumed);
        if (consumed != token.size()) throw InputError("");
      } catch (...) {
        throw InputError("bad cycle entry '" + token + "'");
      }
      if (v < 1 || v > k) throw InputError("cycle entry " + std::to_string(v) + " outside [1, " + std::to_string(k) + "]");
      if (used[static_cast<std::size_t>(v)]) throw InputError("cycles are not disjoint at " + std::to_string(v));
      used[static_cast<std::size_t>(v)] = true;
      cycle.push_back(v);
    }
    if (cycle.size() >= 2) p = compose(p, cycle_perm(k, cycle));
    pos = close + 1;
  }
  return p;
}

}  // namespace tightcycle
