#pragma once

#include <cstddef>
#include <vector>

namespace belltol {

// maximize c.x  subject to  A x = b, x >= 0. A is dense row-major.
struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> objective;  // cols
  std::vector<double> a;          // rows * cols
  std::vector<double> rhs;        // rows

  LinearProgram() = default;
  LinearProgram(std::size_t rows, std::size_t cols);
  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  // Throws ValidationError on inconsistent shapes or non-finite entries.
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double optimum = 0.0;
  std::vector<double> solution;
  // For infeasible problems: y with y.A_j <= tol for every column and y.b > 0.
  std::vector<double> farkas;
  std::size_t pivots = 0;
};

inline constexpr std::size_t kDefaultLpEntryCap = 40'000'000;

// Dense two-phase tableau simplex with Bland's rule. Infeasible and unbounded
// problems are reported through the status, never thrown. Throws
// ResourceLimitError when the tableau would exceed entry_cap entries.
LpResult simplex_max(const LinearProgram& lp, double tol = 1e-9, std::size_t entry_cap = kDefaultLpEntryCap);

}  // namespace belltol
