#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tightcycle {

// Permutation of [k] = {1..k}. Products follow function composition: (a * b)(i) = a(b(i)).
class Perm {
 public:
  Perm() = default;
  // image[i-1] = σ(i). Throws InputError unless image is a bijection on {1..k}.
  explicit Perm(std::vector<int> image);

  static Perm identity(int k);

  int k() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& image() const { return image_; }
  bool is_identity() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> image_;
};

Perm compose(const Perm& a, const Perm& b);
inline Perm operator*(const Perm& a, const Perm& b) { return compose(a, b); }
Perm inverse(const Perm& a);

// τ = (1 2 ... k)
Perm tau(int k);
// τ^r for any integer r, reduced mod k.
Perm tau_power(int k, int r);
// The cyclic permutation (c_1 c_2 ... c_r) on [k]: c_j -> c_{j+1}, c_r -> c_1.
Perm cycle_perm(int k, const std::vector<int>& cycle);
Perm transposition(int k, int i, int j);

// All of S_k in lexicographic order of images.
std::vector<Perm> all_perms(int k);

// Graph on the class indices [k]; edges stored as (min, max), sorted.
class ClassGraph {
 public:
  ClassGraph() = default;
  explicit ClassGraph(int k) : k_(k) {}
  ClassGraph(int k, std::vector<std::pair<int, int>> edges);

  static ClassGraph complete(int k);

  int k() const { return k_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  bool contains(const ClassGraph& other) const;

  friend bool operator==(const ClassGraph&, const ClassGraph&) = default;

 private:
  int k_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

ClassGraph graph_minus(const ClassGraph& g, const ClassGraph& h);
// Relabels every class index c as p(c).
ClassGraph relabel(const ClassGraph& g, const Perm& p);

// Disjoint cycles of length >= 2. Each cycle ends at its minimum; cycles are ordered by
// increasing minimum. Fixed points are omitted, so the identity decomposes to nothing.
struct CyclicDecomposition {
  int k = 0;
  std::vector<std::vector<int>> cycles;
};

CyclicDecomposition decompose(const Perm& a);
Perm recompose(const CyclicDecomposition& d);

struct SigmaStats {
  int m = 1;  // minimum of the last cycle; 1 for the identity
  int t = 0;  // number of cycles
  ClassGraph g_sigma;
  std::vector<bool> x_flags;  // x_flags[i-1]: i lies on a cycle and is not its minimum
  std::vector<bool> y_flags;  // y_flags[i-1]: i ∈ {σ(j) : 1 <= j < m}

  bool x(int i) const { return x_flags[static_cast<std::size_t>(i - 1)]; }
  bool y(int i) const { return y_flags[static_cast<std::size_t>(i - 1)]; }
};

SigmaStats sigma_stats(const Perm& a);

// z[i-1] = 1 iff i ∈ {σ(j) : k-r+1 <= j <= k}; requires 0 <= r < k.
std::vector<bool> z_flags(const Perm& a, int r);

// Cycle notation such as "(3 2 1)(5 4)"; the identity prints as "id".
std::string format_cycles(const Perm& a);
// Accepts any cycle order and rotation, plus "id" / "()".
Perm parse_cycles(std::string_view text, int k);

}  // namespace tightcycle
