#pragma once

// Measurement settings and LP cross-checks shared by the unit tests and the
// acceptance binary.

#include <cmath>
#include <numbers>
#include <vector>

#include <belltol/bell_scenario.hpp>
#include <belltol/quantum_value.hpp>
#include <belltol/simplex.hpp>

#include "oracles/oracles.hpp"

namespace fixture {

using namespace belltol;

// Z, X for Alice and (Z +- X)/sqrt2 for Bob.
inline MeasurementAssignment chsh_optimal() {
  constexpr double pi = std::numbers::pi;
  return {{{Measurement::from_observable(oracle::zx_observable(0)),
            Measurement::from_observable(oracle::zx_observable(pi / 2))},
           {Measurement::from_observable(oracle::zx_observable(pi / 4)),
            Measurement::from_observable(oracle::zx_observable(-pi / 4))}}};
}

// Equatorial observables at -pi/6 and pi/3 on every site.
inline MeasurementAssignment mermin_optimal(std::size_t n) {
  constexpr double pi = std::numbers::pi;
  MeasurementAssignment m;
  for (std::size_t i = 0; i < n; ++i)
    m.parties.push_back({Measurement::from_observable(oracle::xy_observable(-pi / 6)),
                         Measurement::from_observable(oracle::xy_observable(pi / 3))});
  return m;
}

// max f over the local polytope as an LP over its vertices:
//   max t  s.t.  t - sum_v w_v f(D_v) = 0,  sum_v w_v = 1,  w >= 0,
// with t = t+ - t- split into nonnegative parts. Returns NaN unless optimal.
inline double vertex_lp_sup(const BellFunctional& f, std::uint64_t cap = 10'000) {
  const StrategyRange range(f.scenario(), cap);
  const std::size_t v = static_cast<std::size_t>(range.size());
  LinearProgram lp(2, v + 2);
  std::size_t c = 0;
  for (const auto& st : range) {
    lp.at(0, c) = evaluate(f, Behavior::deterministic(f.scenario(), st));
    lp.at(1, c) = 1.0;
    ++c;
  }
  lp.at(0, v) = -1.0;
  lp.at(0, v + 1) = 1.0;
  lp.rhs = {0.0, 1.0};
  lp.objective[v] = 1.0;
  lp.objective[v + 1] = -1.0;
  const auto r = simplex_max(lp);
  return r.status == LpStatus::optimal ? r.optimum : std::nan("");
}

struct GridCase {
  Scenario scenario;
  BellFunctional functional;
};

// Every uniform scenario with 1..6 parties, 1..6 settings and 1..4 outcomes
// whose strategy count is at most 10^4, each with a seeded random functional.
inline std::vector<GridCase> enumeration_grid(std::uint64_t seed = 606) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<GridCase> out;
  for (std::size_t parties = 1; parties <= 6; ++parties)
    for (std::size_t settings = 1; settings <= 6; ++settings)
      for (std::size_t outcomes = 1; outcomes <= 4; ++outcomes) {
        auto sc = Scenario::uniform(parties, settings, outcomes);
        if (strategy_count(sc) > 10'000) continue;
        std::vector<std::vector<double>> coeffs;
        for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
          coeffs.emplace_back(sc.table_size(js));
          for (auto& x : coeffs.back()) x = u(rng);
        }
        BellFunctional f(sc, std::move(coeffs));
        out.push_back({std::move(sc), std::move(f)});
      }
  return out;
}

}  // namespace fixture
