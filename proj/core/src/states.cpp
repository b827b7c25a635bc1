#include "belltol/states.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "belltol/errors.hpp"

namespace belltol {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-9;

void check_shape(std::size_t d, std::size_t n, const CMatrix& m) {
  if (d < 2) throw DomainError("density matrix: dimension per site must be >= 2");
  if (n < 1) throw DomainError("density matrix: at least one site required");
  const std::size_t dim = total_dimension(d, n, std::numeric_limits<std::size_t>::max());
  if (!m.square() || m.rows() != dim)
    throw ValidationError("density matrix: expected " + std::to_string(dim) + "x" +
                          std::to_string(dim) + " matrix");
}

DensityMatrix pure_state(std::size_t d, std::size_t n, const std::vector<Complex>& psi) {
  return DensityMatrix::trusted(d, n, CMatrix::outer(psi, psi));
}

}  // namespace

std::size_t total_dimension(std::size_t d, std::size_t n, std::size_t max_dim) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (dim > max_dim / d) throw ResourceLimitError("state dimension " + std::to_string(d) + "^" +
                                                    std::to_string(n) + " exceeds the dimension cap " +
                                                    std::to_string(max_dim));
    dim *= d;
  }
  return dim;
}

DensityMatrix::DensityMatrix(std::size_t dim_per_site, std::size_t sites, CMatrix matrix)
    : d_(dim_per_site), n_(sites), matrix_(std::move(matrix)) {
  check_shape(d_, n_, matrix_);
  if (!matrix_.all_finite()) throw ValidationError("density matrix: non-finite entries");
  const double herm = matrix_.hermiticity_deviation();
  if (herm > kDefaultHermitianTol)
    throw ValidationError("density matrix: not Hermitian (max deviation " + std::to_string(herm) + ")");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError("density matrix: trace " + std::to_string(tr.real()) + " differs from 1");
  if (!is_psd(matrix_, kPsdTol)) throw ValidationError("density matrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::trusted(std::size_t dim_per_site, std::size_t sites, CMatrix matrix) {
  check_shape(dim_per_site, sites, matrix);
  DensityMatrix rho;
  rho.d_ = dim_per_site;
  rho.n_ = sites;
  rho.matrix_ = std::move(matrix);
  return rho;
}

double DensityMatrix::purity() const { return trace_product(matrix_, matrix_).real(); }

CMatrix DensityMatrix::reduced_site(std::size_t site) const {
  const std::vector<std::size_t> dims(n_, d_);
  const std::vector<const CMatrix*> ops(n_, nullptr);
  // contract_except returns L with L[a][b] = sum rho[(a..),(b..)], i.e. the
  // reduced state itself.
  return contract_except(matrix_, dims, site, ops);
}

DensityMatrix ghz(std::size_t d, std::size_t n, std::size_t max_dim) {
  if (d < 2 || n < 2) throw DomainError("ghz: requires d >= 2 and n >= 2");
  const std::size_t dim = total_dimension(d, n, max_dim);
  std::vector<Complex> psi(dim);
  // |j j ... j> has index j * (1 + d + d^2 + ...).
  std::size_t stride = 0;
  for (std::size_t i = 0, p = 1; i < n; ++i, p *= d) stride += p;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) psi[j * stride] = amp;
  return pure_state(d, n, psi);
}

DensityMatrix dicke(std::size_t n, std::size_t k, std::size_t max_dim) {
  if (n < 2) throw DomainError("dicke: requires n >= 2");
  if (k < 1 || k > n - 1) throw DomainError("dicke: excitation number k must lie in 1..n-1");
  const std::size_t dim = total_dimension(2, n, max_dim);
  std::vector<Complex> psi(dim);
  std::size_t support = 0;
  for (std::size_t idx = 0; idx < dim; ++idx)
    if (static_cast<std::size_t>(__builtin_popcountll(idx)) == k) {
      psi[idx] = 1.0;
      ++support;
    }
  const double amp = 1.0 / std::sqrt(static_cast<double>(support));
  for (auto& z : psi) z *= amp;
  return pure_state(2, n, psi);
}

DensityMatrix white_noise(std::size_t d, std::size_t n, std::size_t max_dim) {
  if (d < 2 || n < 1) throw DomainError("white_noise: requires d >= 2 and n >= 1");
  const std::size_t dim = total_dimension(d, n, max_dim);
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
  return DensityMatrix::trusted(d, n, std::move(m));
}

DensityMatrix product_zero(std::size_t d, std::size_t n, std::size_t max_dim) {
  if (d < 2 || n < 1) throw DomainError("product state: requires d >= 2 and n >= 1");
  const std::size_t dim = total_dimension(d, n, max_dim);
  CMatrix m(dim, dim);
  m(0, 0) = 1.0;
  return DensityMatrix::trusted(d, n, std::move(m));
}

DensityMatrix mix(const DensityMatrix& noise, const DensityMatrix& signal, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("mix: beta must lie in [0, 1]");
  if (noise.dim_per_site() != signal.dim_per_site() || noise.sites() != signal.sites())
    throw ValidationError("mix: noise and signal states have different (d, N)");
  CMatrix m(signal.dim(), signal.dim());
  const auto zn = noise.matrix().entries();
  const auto zs = signal.matrix().entries();
  auto out = m.entries();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - beta) * zn[i] + beta * zs[i];
  return DensityMatrix::trusted(signal.dim_per_site(), signal.sites(), std::move(m));
}

DensityMatrix NoiseSpec::resolve(const DensityMatrix& signal) const {
  if (kind == Kind::white) return white_noise(signal.dim_per_site(), signal.sites(), signal.dim());
  if (!state) throw ValidationError("noise: explicit noise kind without a state");
  if (state->dim_per_site() != signal.dim_per_site() || state->sites() != signal.sites())
    throw ValidationError("noise: explicit noise state does not match the signal's (d, N)");
  return *state;
}

std::string NoiseSpec::label() const { return kind == Kind::white ? "white" : "explicit"; }

}  // namespace belltol
