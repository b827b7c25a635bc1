#include "belltol/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "belltol/errors.hpp"

namespace belltol {

LinearProgram::LinearProgram(std::size_t r, std::size_t c)
    : rows(r), cols(c), objective(c, 0.0), a(r * c, 0.0), rhs(r, 0.0) {}

void LinearProgram::validate() const {
  if (objective.size() != cols || a.size() != rows * cols || rhs.size() != rows)
    throw ValidationError("linear program: inconsistent shapes");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(objective.begin(), objective.end(), finite) || !std::all_of(a.begin(), a.end(), finite) ||
      !std::all_of(rhs.begin(), rhs.end(), finite))
    throw ValidationError("linear program: non-finite entries");
}

namespace {

// Tableau with the objective row stored last and the right-hand side in the
// last column. Objective row entries are reduced costs z_j - c_j.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t width) : m_(m), w_(width + 1), t_((m + 1) * (width + 1), 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return t_[r * w_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return t_[r * w_ + c]; }
  double& rhs(std::size_t r) { return t_[r * w_ + w_ - 1]; }
  std::size_t obj_row() const { return m_; }
  std::size_t rows() const { return m_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = (*this)(r, c);
    double* row = &t_[r * w_];
    for (std::size_t j = 0; j < w_; ++j) row[j] /= p;
    row[c] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* other = &t_[i * w_];
      const double f = other[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w_; ++j) other[j] -= f * row[j];
      other[c] = 0.0;
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * w_), t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w_));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t w_;
  std::vector<double> t_;
};

enum class Phase { optimal, unbounded };

// Bland's rule: entering column is the lowest-index eligible column with a
// negative reduced cost; leaving row breaks ratio ties by lowest basic index.
Phase iterate(Tableau& tab, std::vector<std::size_t>& basis, std::size_t eligible_cols, double tol,
              std::size_t& pivots) {
  const std::size_t max_pivots = 1'000'000;
  while (true) {
    std::size_t enter = eligible_cols;
    for (std::size_t j = 0; j < eligible_cols; ++j)
      if (tab(tab.obj_row(), j) < -tol) {
        enter = j;
        break;
      }
    if (enter == eligible_cols) return Phase::optimal;

    std::size_t leave = tab.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      const double aij = tab(i, enter);
      if (aij <= tol) continue;
      const double ratio = tab.rhs(i) / aij;
      if (leave == tab.rows() || ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == tab.rows()) return Phase::unbounded;
    tab.pivot(leave, enter);
    basis[leave] = enter;
    if (++pivots > max_pivots) throw ResourceLimitError("simplex: pivot limit exceeded");
  }
}

}  // namespace

LpResult simplex_max(const LinearProgram& lp, double tol, std::size_t entry_cap) {
  lp.validate();
  const std::size_t m = lp.rows;
  const std::size_t n = lp.cols;
  if ((m + 1) * (n + m + 1) > entry_cap)
    throw ResourceLimitError("simplex: tableau with " + std::to_string(m) + " rows and " + std::to_string(n + m) +
                             " columns exceeds the LP size cap");

  LpResult result;
  // Rows are flipped so that b >= 0; the artificial basis is then feasible.
  std::vector<double> sign(m, 1.0);
  Tableau tab(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    sign[i] = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab(i, j) = sign[i] * lp.at(i, j);
    tab(i, n + i) = 1.0;
    tab.rhs(i) = sign[i] * lp.rhs[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Phase 1: maximize -sum(artificials). Reduced cost of column j is
  // -sum_i T_ij for original columns, 0 for artificials.
  const std::size_t obj = tab.obj_row();
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += tab(i, j);
    tab(obj, j) = -s;
  }
  {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += tab.rhs(i);
    tab.rhs(obj) = -s;
  }
  iterate(tab, basis, n + m, tol, result.pivots);

  double bscale = 1.0;
  for (double b : lp.rhs) bscale = std::max(bscale, std::abs(b));
  if (tab.rhs(obj) < -tol * bscale) {
    // Duals pi_i = r_{n+i} + c_{n+i} = r_{n+i} - 1; y = -pi certifies
    // infeasibility, mapped back through the row flips.
    result.status = LpStatus::infeasible;
    result.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) result.farkas[i] = -(tab(obj, n + i) - 1.0) * sign[i];
    return result;
  }

  // Drive zero-level artificials out of the basis; rows where that is
  // impossible are linearly dependent and are dropped.
  for (std::size_t i = 0; i < tab.rows();) {
    if (basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = n;
    double best = tol;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(tab(i, j)) > best) {
        best = std::abs(tab(i, j));
        col = j;
      }
    if (col < n) {
      tab.pivot(i, col);
      basis[i] = col;
      ++result.pivots;
      ++i;
    } else {
      tab.drop_row(i);
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // Phase 2 objective row from the current basis; artificials are barred.
  const std::size_t obj2 = tab.obj_row();
  for (std::size_t j = 0; j < n + m; ++j) {
    double z = 0.0;
    for (std::size_t i = 0; i < tab.rows(); ++i) z += lp.objective[basis[i]] * tab(i, j);
    tab(obj2, j) = z - (j < n ? lp.objective[j] : 0.0);
  }
  {
    double z = 0.0;
    for (std::size_t i = 0; i < tab.rows(); ++i) z += lp.objective[basis[i]] * tab.rhs(i);
    tab.rhs(obj2) = z;
  }
  if (iterate(tab, basis, n, tol, result.pivots) == Phase::unbounded) {
    result.status = LpStatus::unbounded;
    return result;
  }

  result.status = LpStatus::optimal;
  result.solution.assign(n, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i) result.solution[basis[i]] = std::max(0.0, tab.rhs(i));
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * result.solution[j];
  result.optimum = value;
  return result;
}

}  // namespace belltol
