#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace tightcycle {

// maximise c·x subject to A x <= b, x >= 0. Rows of `a` are sparse (column, coefficient).
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<std::vector<std::pair<std::size_t, mpq_class>>> rows;
  std::vector<mpq_class> rhs;
  std::vector<mpq_class> objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  mpq_class value;
  std::vector<mpq_class> x;
  std::uint64_t pivots = 0;
};

// Two-phase primal simplex in exact rationals; largest-coefficient pricing with a fallback to Bland's rule.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace tightcycle
