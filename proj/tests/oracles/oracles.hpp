#pragma once

// Independent reference computations used to check the library. They avoid
// the library's contraction, enumeration and simplex code paths and favour
// the most literal formula over speed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <vector>

#include <belltol/bell_scenario.hpp>
#include <belltol/linalg.hpp>
#include <belltol/quantum_value.hpp>
#include <belltol/simplex.hpp>
#include <belltol/states.hpp>

namespace oracle {

using belltol::CMatrix;
using belltol::Complex;

// (a ⊗ b)[(i,k),(j,l)] = a[i,j] b[k,l]
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

// p(o|s) = tr[rho (E_1 ⊗ ... ⊗ E_N)] with the full tensor product formed explicitly.
inline std::vector<std::vector<double>> behavior(const belltol::DensityMatrix& rho,
                                                 const belltol::MeasurementAssignment& meas) {
  const auto sc = meas.scenario();
  std::vector<std::vector<double>> tables;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    const auto s = sc.decode_joint_setting(js);
    std::vector<double> t(sc.table_size(js));
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
      const auto o = sc.decode_outcome(js, idx);
      CMatrix e = meas.parties[0][s[0]].effects()[o[0]];
      for (std::size_t n = 1; n < o.size(); ++n) e = oracle::kron(e, meas.parties[n][s[n]].effects()[o[n]]);
      t[idx] = trace_of_product(rho.matrix(), e).real();
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

struct Extremes {
  double sup = -1e300;
  double inf = 1e300;
};

// Recursive walk over every outcome assignment of every (party, setting).
inline Extremes lhv(const belltol::BellFunctional& f) {
  const auto& sc = f.scenario();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t n = 0; n < sc.parties(); ++n)
    for (std::size_t s = 0; s < sc.settings(n); ++s) slots.emplace_back(n, s);
  std::vector<std::vector<std::size_t>> choice(sc.parties());
  for (std::size_t n = 0; n < sc.parties(); ++n) choice[n].assign(sc.settings(n), 0);
  Extremes ex;
  auto value = [&] {
    double v = 0.0;
    for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
      const auto s = sc.decode_joint_setting(js);
      std::size_t idx = 0;
      for (std::size_t n = 0; n < sc.parties(); ++n) idx = idx * sc.outcome_count(n, s[n]) + choice[n][s[n]];
      v += f.table(js)[idx];
    }
    return v;
  };
  auto rec = [&](auto&& self, std::size_t slot) -> void {
    if (slot == slots.size()) {
      const double v = value();
      ex.sup = std::max(ex.sup, v);
      ex.inf = std::min(ex.inf, v);
      return;
    }
    const auto [n, s] = slots[slot];
    for (std::size_t o = 0; o < sc.outcome_count(n, s); ++o) {
      choice[n][s] = o;
      self(self, slot + 1);
    }
  };
  rec(rec, 0);
  return ex;
}

// Solves the square system m x = b by Gaussian elimination; nullopt if singular.
inline std::optional<std::vector<double>> solve(std::vector<std::vector<double>> m, std::vector<double> b) {
  const std::size_t k = b.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (std::abs(m[p][c]) < 1e-10) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < k; ++j) m[r][j] -= f * m[c][j];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < k; ++c) b[c] /= m[c][c];
  return b;
}

// Best basic feasible solution by scanning every choice of `rows` columns.
// Requires a full-row-rank constraint matrix and a bounded feasible region.
inline std::optional<double> vertex_scan(const belltol::LinearProgram& lp) {
  std::optional<double> best;
  std::vector<std::size_t> cols(lp.rows);
  for (std::size_t i = 0; i < lp.rows; ++i) cols[i] = i;
  while (true) {
    std::vector<std::vector<double>> m(lp.rows, std::vector<double>(lp.rows));
    for (std::size_t r = 0; r < lp.rows; ++r)
      for (std::size_t c = 0; c < lp.rows; ++c) m[r][c] = lp.at(r, cols[c]);
    if (auto x = solve(m, lp.rhs)) {
      if (std::all_of(x->begin(), x->end(), [](double v) { return v >= -1e-9; })) {
        double obj = 0.0;
        for (std::size_t c = 0; c < lp.rows; ++c) obj += lp.objective[cols[c]] * (*x)[c];
        if (!best || obj > *best) best = obj;
      }
    }
    // next combination
    std::size_t i = lp.rows;
    while (i > 0 && cols[i - 1] == lp.cols - lp.rows + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < lp.rows; ++j) cols[j] = cols[j - 1] + 1;
  }
  return best;
}

inline CMatrix ginibre(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (auto& z : m.entries()) z = Complex(g(rng), g(rng));
  return m;
}

inline belltol::DensityMatrix random_state(std::size_t d, std::size_t n, std::mt19937_64& rng) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= d;
  const CMatrix g = ginibre(dim, dim, rng);
  CMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return belltol::DensityMatrix(d, n, 0.5 * (rho + rho.adjoint()));
}

// E_k = S^{-1/2} A_k S^{-1/2} with A_k = G_k G_k^† and S = sum_k A_k.
inline belltol::Measurement random_povm(std::size_t d, std::size_t outcomes, std::mt19937_64& rng) {
  std::vector<CMatrix> a;
  CMatrix s(d, d);
  for (std::size_t k = 0; k < outcomes; ++k) {
    const CMatrix g = ginibre(d, d, rng);
    a.push_back(g * g.adjoint());
    s += a.back();
  }
  const auto eig = belltol::eig_hermitian(0.5 * (s + s.adjoint()));
  std::vector<double> inv_sqrt;
  for (double w : eig.values) inv_sqrt.push_back(1.0 / std::sqrt(w));
  const CMatrix root = eig.vectors * CMatrix::diagonal(inv_sqrt) * eig.vectors.adjoint();
  std::vector<CMatrix> effects;
  CMatrix total(d, d);
  for (std::size_t k = 0; k < outcomes; ++k) {
    CMatrix e = root * a[k] * root;
    e = 0.5 * (e + e.adjoint());
    effects.push_back(e);
    total += e;
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values;
  for (std::size_t k = 0; k < outcomes; ++k) values.push_back(u(rng));
  return belltol::Measurement(std::move(effects), std::move(values));
}

// Real qubit observable cos(t) Z + sin(t) X.
inline CMatrix zx_observable(double t) {
  return CMatrix(2, 2, {std::cos(t), std::sin(t), std::sin(t), -std::cos(t)});
}

// cos(p) X + sin(p) Y.
inline CMatrix xy_observable(double p) {
  return CMatrix(2, 2, {0.0, std::polar(1.0, -p), std::polar(1.0, p), 0.0});
}

}  // namespace oracle
