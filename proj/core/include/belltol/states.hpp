#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "belltol/linalg.hpp"

namespace belltol {

// Trace-one positive operator on (C^d)^{⊗N}. Site 0 is the most significant
// base-d digit of the computational-basis index.
class DensityMatrix {
 public:
  // Validates Hermiticity (1e-10), unit trace (1e-10) and positivity (1e-9).
  DensityMatrix(std::size_t dim_per_site, std::size_t sites, CMatrix matrix);

  // Skips the eigenvalue check; used by constructors whose output is PSD by
  // construction (pure states, convex mixtures of valid states).
  static DensityMatrix trusted(std::size_t dim_per_site, std::size_t sites, CMatrix matrix);

  std::size_t dim_per_site() const { return d_; }
  std::size_t sites() const { return n_; }
  std::size_t dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

  double purity() const;
  // Reduced state on one site.
  CMatrix reduced_site(std::size_t site) const;

 private:
  DensityMatrix() = default;
  std::size_t d_ = 0;
  std::size_t n_ = 0;
  CMatrix matrix_;
};

// Checked d^n; throws ResourceLimitError above max_dim.
std::size_t total_dimension(std::size_t d, std::size_t n, std::size_t max_dim = kDefaultMaxDimension);

DensityMatrix ghz(std::size_t d, std::size_t n, std::size_t max_dim = kDefaultMaxDimension);
DensityMatrix dicke(std::size_t n, std::size_t k, std::size_t max_dim = kDefaultMaxDimension);
inline DensityMatrix w_state(std::size_t n, std::size_t max_dim = kDefaultMaxDimension) {
  return dicke(n, 1, max_dim);
}
DensityMatrix white_noise(std::size_t d, std::size_t n, std::size_t max_dim = kDefaultMaxDimension);
// |0...0><0...0|
DensityMatrix product_zero(std::size_t d, std::size_t n, std::size_t max_dim = kDefaultMaxDimension);

// (1 - beta) noise + beta signal.
DensityMatrix mix(const DensityMatrix& noise, const DensityMatrix& signal, double beta);

// White noise, or an explicit state. Locality of an explicit noise state is
// not checked; visibility results computed with it are conditional on it.
struct NoiseSpec {
  enum class Kind { white, explicit_state };
  Kind kind = Kind::white;
  std::optional<DensityMatrix> state;

  static NoiseSpec white() { return {}; }
  static NoiseSpec explicit_noise(DensityMatrix s) { return {Kind::explicit_state, std::move(s)}; }

  // Materialize for a signal state; throws ValidationError on a (d, N) mismatch.
  DensityMatrix resolve(const DensityMatrix& signal) const;
  std::string label() const;
};

}  // namespace belltol
