#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace belltol {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultMaxDimension = 4096;
inline constexpr double kDefaultHermitianTol = 1e-10;

// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> diag);
  // |v><w| for column vectors v, w.
  static CMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  CMatrix adjoint() const;
  Complex trace() const;
  double max_abs() const;
  // max |h_ij - conj(h_ji)|
  double hermiticity_deviation() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
// tr(a b) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b);
CMatrix matvec_as_column(const CMatrix& a, std::span<const Complex> v);

// Kronecker product. Throws ResourceLimitError when either result dimension
// exceeds max_dim.
CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_dim = kDefaultMaxDimension);
CMatrix kron_all(std::span<const CMatrix> factors, std::size_t max_dim = kDefaultMaxDimension);

struct HermitianEigen {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column k pairs with values[k]
};

// Cyclic Jacobi eigendecomposition. Sweep order is fixed (row-major over the
// upper triangle), so results are reproducible on a given platform.
HermitianEigen eig_hermitian(const CMatrix& h, double tol = kDefaultHermitianTol);

bool is_psd(const CMatrix& h, double tol = 1e-9);

// Operator sign function; eigenvalues with |w| < zero_tol map to +1.
CMatrix hermitian_sign(const CMatrix& h, double zero_tol = 1e-12);

// Reduced operator on one tensor site. `m` acts on dims.size() sites of
// dimensions `dims` (site 0 most significant). Each other site k is
// contracted with ops[k] (nullptr means identity):
//   L[a][b] = sum rho[(..a..),(..b..)] * prod_k op_k[j_k][i_k]
// so that tr[m (A_site ⊗ others)] = tr[A L].
CMatrix contract_except(const CMatrix& m, std::span<const std::size_t> dims, std::size_t site,
                        std::span<const CMatrix* const> ops);

// Contract one position of a multi-site operator with `op` (nullptr means
// identity); the result acts on the remaining sites.
CMatrix contract_site(const CMatrix& m, std::span<const std::size_t> dims, std::size_t pos, const CMatrix* op);

// tr[m (op_0 ⊗ op_1 ⊗ ...)] with nullptr entries treated as identity.
Complex contract_all(const CMatrix& m, std::span<const std::size_t> dims,
                     std::span<const CMatrix* const> ops);

}  // namespace belltol
