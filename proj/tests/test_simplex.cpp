#include <gtest/gtest.h>

#include <random>

#include <belltol/errors.hpp>
#include <belltol/simplex.hpp>

#include "oracles/oracles.hpp"

using namespace belltol;

namespace {

LinearProgram make(std::size_t rows, std::size_t cols, std::vector<double> a, std::vector<double> b,
                   std::vector<double> c) {
  LinearProgram lp(rows, cols);
  lp.a = std::move(a);
  lp.rhs = std::move(b);
  lp.objective = std::move(c);
  return lp;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Random bounded feasible LP. The first row sum x = total keeps it bounded and
// the rhs is generated from a nonnegative point.
LinearProgram random_lp(std::size_t rows, std::size_t cols, std::mt19937_64& rng, bool degenerate) {
  std::uniform_real_distribution<double> u(-1, 1), pos(0, 1);
  std::uniform_int_distribution<int> small(-2, 2);
  LinearProgram lp(rows, cols);
  std::vector<double> x0(cols);
  for (std::size_t c = 0; c < cols; ++c) x0[c] = (degenerate && c % 2) ? 0.0 : pos(rng);
  for (std::size_t c = 0; c < cols; ++c) {
    lp.at(0, c) = 1.0;
    for (std::size_t r = 1; r < rows; ++r) lp.at(r, c) = degenerate ? small(rng) : u(rng);
    lp.objective[c] = degenerate ? small(rng) : u(rng);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0;
    for (std::size_t c = 0; c < cols; ++c) s += lp.at(r, c) * x0[c];
    lp.rhs[r] = s;
  }
  return lp;
}

}  // namespace

TEST(Simplex, SingleEquality) {
  const auto r = simplex_max(make(1, 1, {1}, {1}, {1}));
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_NEAR(r.optimum, 1.0, 1e-12);
}

TEST(Simplex, SumConstraint) {
  const auto r = simplex_max(make(1, 2, {1, 1}, {1}, {1, 1}));
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_NEAR(r.optimum, 1.0, 1e-12);
  EXPECT_NEAR(r.solution[0] + r.solution[1], 1.0, 1e-12);
}

TEST(Simplex, Infeasible) {
  // x + y = 1 and x + y = 2
  const auto r = simplex_max(make(2, 2, {1, 1, 1, 1}, {1, 2}, {0, 0}));
  ASSERT_EQ(r.status, LpStatus::infeasible);
  ASSERT_EQ(r.farkas.size(), 2u);
  EXPECT_LE(r.farkas[0] + r.farkas[1], 1e-9);
  EXPECT_GT(r.farkas[0] * 1 + r.farkas[1] * 2, 0.0);
  // x = -1
  const auto neg = simplex_max(make(1, 1, {1}, {-1}, {0}));
  ASSERT_EQ(neg.status, LpStatus::infeasible);
  EXPECT_LE(neg.farkas[0], 1e-9);
  EXPECT_GT(-neg.farkas[0], 0.0);
}

TEST(Simplex, Unbounded) {
  // x - y = 0, maximise x
  const auto r = simplex_max(make(1, 2, {1, -1}, {0}, {1, 0}));
  EXPECT_EQ(r.status, LpStatus::unbounded);
}

TEST(Simplex, RedundantRows) {
  const auto r = simplex_max(make(3, 3, {1, 1, 1, 2, 2, 2, 1, 0, 0}, {1, 2, 0.25}, {0, 1, 2}));
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_NEAR(r.optimum, 1.5, 1e-12);
}

TEST(Simplex, RandomAgainstVertexScan) {
  std::mt19937_64 rng(31337);
  int compared = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + t % 4;
    const std::size_t cols = rows + 1 + (t * 7) % 9;
    const bool degenerate = t % 3 == 0;
    const auto lp = random_lp(rows, cols, rng, degenerate);
    const auto r = simplex_max(lp);
    const auto o = oracle::vertex_scan(lp);
    ASSERT_EQ(r.status, LpStatus::optimal) << t;
    if (!o) continue;  // rank-deficient draw; the oracle needs full row rank
    ++compared;
    EXPECT_NEAR(r.optimum, *o, 1e-8) << t;
    for (double x : r.solution) EXPECT_GE(x, -1e-9);
    for (std::size_t row = 0; row < rows; ++row) {
      double s = 0;
      for (std::size_t c = 0; c < cols; ++c) s += lp.at(row, c) * r.solution[c];
      EXPECT_NEAR(s, lp.rhs[row], 1e-8);
    }
    EXPECT_NEAR(dot(lp.objective, r.solution), r.optimum, 1e-9);
  }
  EXPECT_GE(compared, 180);
}

TEST(Simplex, FiftyVariables) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto lp = random_lp(2, 50, rng, t % 2 == 0);
    const auto r = simplex_max(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_NEAR(r.optimum, *oracle::vertex_scan(lp), 1e-8);
  }
}

TEST(Simplex, DeterministicPivoting) {
  std::mt19937_64 rng(12);
  const auto lp = random_lp(4, 12, rng, true);
  const auto a = simplex_max(lp), b = simplex_max(lp);
  EXPECT_EQ(a.solution, b.solution);
  EXPECT_EQ(a.pivots, b.pivots);
}

TEST(Simplex, ShapeValidationAndCap) {
  LinearProgram bad(2, 2);
  bad.rhs.pop_back();
  EXPECT_THROW(simplex_max(bad), ValidationError);
  LinearProgram nan(1, 1);
  nan.a[0] = NAN;
  EXPECT_THROW(simplex_max(nan), ValidationError);
  EXPECT_THROW(simplex_max(LinearProgram(100, 100), 1e-9, 1000), ResourceLimitError);
}
