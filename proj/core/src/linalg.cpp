#include "belltol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "belltol/errors.hpp"

namespace belltol {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ValidationError("CMatrix: " + std::to_string(data_.size()) + " entries for a " +
                          std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ValidationError("CMatrix: ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
  CMatrix m(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::hermiticity_deviation() const {
  if (!square()) throw ValidationError("hermiticity check on a non-square matrix");
  double dev = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return dev;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw ValidationError("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw ValidationError("matrix difference: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix product: inner dimensions differ");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw ValidationError("trace_product: shape mismatch");
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

CMatrix matvec_as_column(const CMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw ValidationError("matvec: dimension mismatch");
  CMatrix out(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out(i, 0) = s;
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_dim) {
  const std::size_t r = a.rows() * b.rows();
  const std::size_t c = a.cols() * b.cols();
  if (r > max_dim || c > max_dim) {
    throw ResourceLimitError("kron: result " + std::to_string(r) + "x" + std::to_string(c) +
                             " exceeds the dimension cap " + std::to_string(max_dim));
  }
  CMatrix out(r, c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CMatrix kron_all(std::span<const CMatrix> factors, std::size_t max_dim) {
  if (factors.empty()) return CMatrix::identity(1);
  CMatrix acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = kron(acc, factors[i], max_dim);
  return acc;
}

HermitianEigen eig_hermitian(const CMatrix& h, double tol) {
  if (!h.square()) throw ValidationError("eig_hermitian: matrix is not square");
  const double dev = h.hermiticity_deviation();
  if (dev > tol) {
    throw ValidationError("eig_hermitian: matrix is not Hermitian (max deviation " +
                          std::to_string(dev) + ")");
  }
  const std::size_t n = h.rows();
  // Work on the exactly Hermitian part.
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  CMatrix v = CMatrix::identity(n);

  double scale = 0.0;
  for (const auto& z : a.entries()) scale += std::norm(z);
  scale = std::sqrt(scale);
  const double target = std::max(scale, 1e-300) * 1e-14;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    off = std::sqrt(2.0 * off);
    if (off <= target) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        // Phase D = diag(1, e^{-i phi}) makes the (p,q) entry real, then a real
        // rotation annihilates it. U = D R.
        const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

bool is_psd(const CMatrix& h, double tol) {
  const auto eig = eig_hermitian(h, std::max(tol, kDefaultHermitianTol));
  return eig.values.empty() || eig.values.back() >= -tol;
}

CMatrix hermitian_sign(const CMatrix& h, double zero_tol) {
  const auto eig = eig_hermitian(h, std::max(1e-9, 1e-9 * h.max_abs()));
  const std::size_t n = h.rows();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sgn = (eig.values[k] < -zero_tol) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.vectors(i, k) * sgn;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

namespace {

std::size_t product_of(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// Contract position `pos` of the current site list with `op` (nullptr = identity).
CMatrix contract_position(const CMatrix& r, std::span<const std::size_t> dims, std::size_t pos,
                          const CMatrix* op) {
  const std::size_t d = dims[pos];
  const std::size_t high = product_of(dims.subspan(0, pos));
  const std::size_t low = product_of(dims.subspan(pos + 1));
  const std::size_t out_dim = high * low;
  CMatrix out(out_dim, out_dim);
  auto idx = [&](std::size_t h, std::size_t a, std::size_t l) { return (h * d + a) * low + l; };
  for (std::size_t h = 0; h < high; ++h)
    for (std::size_t l = 0; l < low; ++l)
      for (std::size_t h2 = 0; h2 < high; ++h2)
        for (std::size_t l2 = 0; l2 < low; ++l2) {
          Complex s = 0.0;
          if (op == nullptr) {
            for (std::size_t a = 0; a < d; ++a) s += r(idx(h, a, l), idx(h2, a, l2));
          } else {
            for (std::size_t a = 0; a < d; ++a)
              for (std::size_t b = 0; b < d; ++b) {
                const Complex o = (*op)(b, a);
                if (o != Complex{}) s += r(idx(h, a, l), idx(h2, b, l2)) * o;
              }
          }
          out(h * low + l, h2 * low + l2) = s;
        }
  return out;
}

void check_contract_args(const CMatrix& m, std::span<const std::size_t> dims,
                         std::span<const CMatrix* const> ops) {
  if (ops.size() != dims.size()) throw ValidationError("contract: one operator slot per site required");
  if (!m.square() || m.rows() != product_of(dims))
    throw ValidationError("contract: matrix dimension does not match site dimensions");
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (ops[k] != nullptr && (ops[k]->rows() != dims[k] || ops[k]->cols() != dims[k]))
      throw ValidationError("contract: site operator has the wrong dimension");
  }
}

}  // namespace

CMatrix contract_site(const CMatrix& m, std::span<const std::size_t> dims, std::size_t pos, const CMatrix* op) {
  if (pos >= dims.size()) throw ValidationError("contract_site: position out of range");
  if (!m.square() || m.rows() != product_of(dims))
    throw ValidationError("contract_site: matrix dimension does not match site dimensions");
  if (op != nullptr && (op->rows() != dims[pos] || op->cols() != dims[pos]))
    throw ValidationError("contract_site: operator has the wrong dimension");
  return contract_position(m, dims, pos, op);
}

CMatrix contract_except(const CMatrix& m, std::span<const std::size_t> dims, std::size_t site,
                        std::span<const CMatrix* const> ops) {
  check_contract_args(m, dims, ops);
  if (site >= dims.size()) throw ValidationError("contract_except: site out of range");
  std::vector<std::size_t> cur(dims.begin(), dims.end());
  CMatrix r = m;
  // Contract from the last site down so earlier positions stay valid.
  for (std::size_t k = dims.size(); k-- > 0;) {
    if (k == site) continue;
    r = contract_position(r, cur, k, ops[k]);
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return r;
}

Complex contract_all(const CMatrix& m, std::span<const std::size_t> dims,
                     std::span<const CMatrix* const> ops) {
  check_contract_args(m, dims, ops);
  std::vector<std::size_t> cur(dims.begin(), dims.end());
  CMatrix r = m;
  for (std::size_t k = dims.size(); k-- > 1;) {
    r = contract_position(r, cur, k, ops[k]);
    cur.pop_back();
  }
  return ops.empty() || ops[0] == nullptr ? r.trace() : trace_product(r, *ops[0]);
}

}  // namespace belltol
