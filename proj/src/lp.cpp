#include "tightcycle/lp.hpp"

#include <stdexcept>

namespace tightcycle {

namespace {

// Dense tableau; column layout: structural, slack, artificial, then rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows, std::vector<mpq_class>(cols + 1)) {}

  mpq_class& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  mpq_class& rhs(std::size_t r) { return t_[r][cols_]; }

  void pivot(std::size_t pr, std::size_t pc, std::vector<mpq_class>& cost, mpq_class& cost_rhs) {
    auto& prow = t_[pr];
    const mpq_class inv = 1 / prow[pc];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(prow[j]) == 0) continue;
      prow[j] *= inv;
      nz.push_back(j);
    }
    auto eliminate = [&](std::vector<mpq_class>& row, mpq_class& row_rhs) {
      if (sgn(row[pc]) == 0) return;
      const mpq_class f = row[pc];
      for (std::size_t j : nz) {
        if (j == cols_) {
          row_rhs -= f * prow[j];
        } else {
          row[j] -= f * prow[j];
        }
      }
    };
    for (std::size_t r = 0; r < rows_; ++r)
      if (r != pr) eliminate(t_[r], t_[r][cols_]);
    eliminate(cost, cost_rhs);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<mpq_class>& row(std::size_t r) const { return t_[r]; }

 private:
  std::size_t rows_, cols_;
  std::vector<std::vector<mpq_class>> t_;
};

// Maximises the reduced-cost row `cost` (cost[j] > 0 means entering j improves) over
// columns [0, limit). Returns false when unbounded. Dantzig's rule until a run of
// degenerate pivots, then Bland's rule, which cannot cycle.
bool run_simplex(Tableau& tab, std::vector<std::size_t>& basis, std::vector<mpq_class>& cost, mpq_class& cost_rhs,
                 std::size_t limit, std::uint64_t& pivots) {
  constexpr int kDegenerateRun = 50;
  int degenerate = 0;
  while (true) {
    const bool bland = degenerate >= kDegenerateRun;
    std::size_t enter = limit;
    for (std::size_t j = 0; j < limit; ++j) {
      if (sgn(cost[j]) <= 0) continue;
      if (enter == limit || (!bland && cost[j] > cost[enter])) enter = j;
      if (bland) break;
    }
    if (enter == limit) return true;
    std::size_t leave = tab.rows();
    mpq_class best_ratio;
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      const mpq_class& coef = tab.row(r)[enter];
      if (sgn(coef) <= 0) continue;
      mpq_class ratio = tab.row(r)[tab.cols()] / coef;
      if (leave == tab.rows() || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == tab.rows()) return false;
    if (sgn(best_ratio) == 0)
      ++degenerate;
    else if (degenerate < kDegenerateRun)
      degenerate = 0;
    tab.pivot(leave, enter, cost, cost_rhs);
    basis[leave] = enter;
    ++pivots;
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.num_vars;
  if (lp.rhs.size() != m || lp.objective.size() != n) throw std::invalid_argument("inconsistent linear program");

  std::vector<std::size_t> negative_rows;
  for (std::size_t r = 0; r < m; ++r)
    if (sgn(lp.rhs[r]) < 0) negative_rows.push_back(r);
  const std::size_t n_art = negative_rows.size();
  const std::size_t cols = n + m + n_art;

  Tableau tab(m, cols);
  std::vector<std::size_t> basis(m);
  std::size_t art = 0;
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = sgn(lp.rhs[r]) < 0;
    for (const auto& [j, coef] : lp.rows[r]) {
      if (j >= n) throw std::invalid_argument("column index out of range");
      tab.at(r, j) += flip ? mpq_class(-coef) : coef;
    }
    tab.at(r, n + r) = flip ? -1 : 1;
    tab.rhs(r) = flip ? mpq_class(-lp.rhs[r]) : lp.rhs[r];
    if (flip) {
      tab.at(r, n + m + art) = 1;
      basis[r] = n + m + art;
      ++art;
    } else {
      basis[r] = n + r;
    }
  }

  LpSolution sol;
  if (n_art > 0) {
    // Phase one: maximise -Σ artificials, written in reduced form over the flipped rows.
    std::vector<mpq_class> cost(cols);
    mpq_class cost_rhs = 0;
    for (std::size_t r : negative_rows) {
      for (std::size_t j = 0; j < n + m; ++j) cost[j] += tab.row(r)[j];
      cost_rhs += tab.row(r)[cols];
    }
    run_simplex(tab, basis, cost, cost_rhs, n + m, sol.pivots);
    if (sgn(cost_rhs) != 0) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive remaining (zero-valued) artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < n + m) continue;
      for (std::size_t j = 0; j < n + m; ++j)
        if (sgn(tab.row(r)[j]) != 0) {
          std::vector<mpq_class> dummy(cols);
          mpq_class dummy_rhs;
          tab.pivot(r, j, dummy, dummy_rhs);
          basis[r] = j;
          ++sol.pivots;
          break;
        }
    }
  }

  // Phase two: reduced costs of the true objective.
  std::vector<mpq_class> cost(cols);
  mpq_class cost_rhs = 0;
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = basis[r];
    if (b >= n || sgn(cost[b]) == 0) continue;
    const mpq_class f = cost[b];
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(tab.row(r)[j]) != 0) cost[j] -= f * tab.row(r)[j];
    cost_rhs -= f * tab.row(r)[cols];
  }
  if (!run_simplex(tab, basis, cost, cost_rhs, n + m, sol.pivots)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.x.assign(n, 0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) sol.x[basis[r]] = tab.row(r)[cols];
  sol.value = 0;
  for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
  sol.value.canonicalize();
  return sol;
}

}  // namespace tightcycle
