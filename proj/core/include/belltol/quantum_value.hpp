#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "belltol/bell_scenario.hpp"
#include "belltol/linalg.hpp"
#include "belltol/states.hpp"

namespace belltol {

inline constexpr double kPovmTol = 1e-9;

// Finite POVM with one outcome value in [-1, 1] per effect.
class Measurement {
 public:
  Measurement() = default;
  // Validates positivity and completeness of the effects within 1e-9.
  Measurement(std::vector<CMatrix> effects, std::vector<double> values);

  // Two-outcome projective measurement of a +-1 observable; outcome order
  // follows `values` (default {-1, +1}), effect for value v is (I + v A)/2.
  static Measurement from_observable(const CMatrix& observable, std::span<const double> values = {});
  // Projective measurement in the computational basis, default outcome grid.
  static Measurement computational_basis(std::size_t d);

  std::size_t dim() const { return effects_.empty() ? 0 : effects_.front().rows(); }
  std::size_t outcomes() const { return effects_.size(); }
  const std::vector<CMatrix>& effects() const { return effects_; }
  const std::vector<double>& values() const { return values_; }
  // sum_k value_k E_k
  CMatrix observable() const;

 private:
  std::vector<CMatrix> effects_;
  std::vector<double> values_;
};

// parties[n][s] is the measurement of party n under setting s.
struct MeasurementAssignment {
  std::vector<std::vector<Measurement>> parties;

  // Throws ValidationError unless every measurement acts on dimension d.
  void validate(std::size_t d) const;
  Scenario scenario() const;
};

// Joint outcome probabilities, one table per joint setting, laid out like
// BellFunctional coefficient tables.
struct Behavior {
  Scenario scenario;
  std::vector<std::vector<double>> tables;

  static Behavior deterministic(const Scenario& sc, const DeterministicStrategy& strategy);
  static Behavior uniform(const Scenario& sc);

  double min_probability() const;
  // max over joint settings of |sum p - 1|
  double max_normalization_error() const;
  // max deviation between marginals of the other parties when one party
  // changes its setting.
  double max_signaling_deviation() const;

  // Affine combination (1 - t) a + t b on equal shapes.
  static Behavior affine(const Behavior& a, const Behavior& b, double t);
};

// p(o | s) = tr[rho (M_{1,s_1}(o_1) ⊗ ... ⊗ M_{N,s_N}(o_N))]
Behavior behavior(const DensityMatrix& rho, const MeasurementAssignment& meas);

// sum over joint settings and outcomes of coefficient * probability.
double evaluate(const BellFunctional& f, const Behavior& b);

// |evaluate(f, behavior(rho, meas))| / b_lhv. Throws DomainError when the
// functional's LHV constant vanishes.
double violation_ratio(const BellFunctional& f, const DensityMatrix& rho, const MeasurementAssignment& meas,
                       const EnumerationOptions& enumeration = {});

struct SeesawConfig {
  std::size_t restarts = 20;
  std::uint64_t seed = 1;
  double sweep_tol = 1e-10;
  std::size_t max_sweeps = 500;
  std::size_t threads = 1;
};

struct SeesawResult {
  double value = 0.0;         // best |B| / b_lhv
  double quantum_value = 0.0; // signed B at the best assignment
  MeasurementAssignment assignment;
  std::vector<double> trace;  // best restart, objective |B|/b_lhv after each sweep (index 0 = start)
  std::vector<std::vector<double>> restart_traces;
  std::size_t restarts_used = 0;
  std::size_t best_restart = 0;
};

// Alternating maximisation of |B| over projective +-1 observables. Requires
// two outcomes with values {-1, +1} for every setting and every coefficient
// table of the form c * prod_{k in T} lambda_k; otherwise throws
// UnsupportedFunctionalError. Each restart draws Haar-random bases from a
// stream seeded by (seed, restart) and runs sign-operator updates until a
// sweep improves by less than sweep_tol or max_sweeps is reached.
SeesawResult seesaw(const BellFunctional& f, const DensityMatrix& rho, const SeesawConfig& config = {},
                    const EnumerationOptions& enumeration = {});

// restart,sweep,objective rows for every restart.
void write_seesaw_trace_csv(std::ostream& os, const SeesawResult& result);

struct UpsilonLowerBound {
  double value = 0.0;
  std::size_t functional_index = 0;
  std::string functional_name;
  SeesawResult best;
};

// Max over the library of seesaw values: a lower bound on the maximal
// violation of the state.
UpsilonLowerBound upsilon_lower_bound(const DensityMatrix& rho, std::span<const BellFunctional> library,
                                      const SeesawConfig& config = {}, const EnumerationOptions& enumeration = {});

// mermin(N) plus CHSH on every pair when N > 2.
std::vector<BellFunctional> default_functional_library(std::size_t parties);

}  // namespace belltol
