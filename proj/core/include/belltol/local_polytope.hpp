#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "belltol/bell_scenario.hpp"
#include "belltol/quantum_value.hpp"
#include "belltol/simplex.hpp"
#include "belltol/states.hpp"

namespace belltol {

struct PolytopeOptions {
  double tol = 1e-9;
  std::uint64_t vertex_cap = 1'000'000;
  std::size_t lp_entry_cap = kDefaultLpEntryCap;
};

// Vertex-representation constraint matrix: one row per behavior entry (joint
// setting major, joint outcome minor) plus a final normalisation row; one
// column per deterministic strategy in enumeration order.
LinearProgram vertex_program(const Scenario& sc, const PolytopeOptions& options = {});

// Behavior entries flattened in the row order of vertex_program.
std::vector<double> flatten(const Behavior& b);

struct LocalityResult {
  bool local = false;
  std::vector<double> weights;  // over deterministic strategies, when local
  // When not local: a functional whose value on the behavior exceeds
  // `separating_bound`, while every deterministic strategy scores at most
  // `separating_bound`.
  std::optional<BellFunctional> separating;
  double separating_bound = 0.0;
};

// Phase-1 simplex decision of membership in the local polytope.
LocalityResult is_local(const Behavior& b, const PolytopeOptions& options = {});

struct VisibilityResult {
  double beta_star = 1.0;
  Scenario scenario;
  std::vector<double> weights;  // local model of the mixture at beta_star
  // Separating functional at beta_star + certificate_step, when beta_star < 1.
  std::optional<BellFunctional> dual;
  double dual_bound = 0.0;
  double certificate_step = 1e-6;
  std::string noise_label;
  bool conditional_on_noise_locality = false;

  std::string certificate_kind() const { return dual ? "dual" : "weights"; }
};

// Largest beta with behavior((1 - beta) noise + beta rho, meas) local, for the
// given fixed measurements. Solved as one LP with beta as a variable. Throws
// DomainError when the noise behavior itself is not local.
VisibilityResult critical_visibility(const DensityMatrix& rho, const NoiseSpec& noise,
                                     const MeasurementAssignment& meas, const PolytopeOptions& options = {});

}  // namespace belltol
