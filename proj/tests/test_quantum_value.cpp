#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <belltol/errors.hpp>
#include <belltol/quantum_value.hpp>

#include "oracles/oracles.hpp"

using namespace belltol;

namespace {

constexpr double kPi = std::numbers::pi;

// A in {Z, X}, B in {(Z+X)/sqrt2, (Z-X)/sqrt2}.
MeasurementAssignment chsh_optimal() {
  return {{{Measurement::from_observable(oracle::zx_observable(0)),
            Measurement::from_observable(oracle::zx_observable(kPi / 2))},
           {Measurement::from_observable(oracle::zx_observable(kPi / 4)),
            Measurement::from_observable(oracle::zx_observable(-kPi / 4))}}};
}

MeasurementAssignment computational(std::size_t n, std::size_t d) {
  MeasurementAssignment m;
  for (std::size_t i = 0; i < n; ++i) m.parties.push_back({Measurement::computational_basis(d)});
  return m;
}

MeasurementAssignment random_assignment(std::size_t d, std::size_t n, std::mt19937_64& rng) {
  MeasurementAssignment m;
  std::uniform_int_distribution<std::size_t> settings(1, 2), outcomes(1, 3);
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<Measurement> party;
    const std::size_t s = settings(rng);
    for (std::size_t k = 0; k < s; ++k) party.push_back(oracle::random_povm(d, outcomes(rng), rng));
    m.parties.push_back(std::move(party));
  }
  return m;
}

}  // namespace

TEST(MeasurementType, Validation) {
  EXPECT_THROW(Measurement({}, {}), ValidationError);
  EXPECT_THROW(Measurement({CMatrix::identity(2)}, {1.0, 2.0}), ValidationError);
  EXPECT_THROW(Measurement({CMatrix::identity(2)}, {1.5}), ValidationError);
  const std::vector<double> half{0.5, 0.5}, neg{1.5, -0.5}, rest{-0.5, 1.5};
  EXPECT_THROW(Measurement({CMatrix::diagonal(half)}, {1.0}), ValidationError);
  EXPECT_THROW(Measurement({CMatrix::diagonal(neg), CMatrix::diagonal(rest)}, {1.0, -1.0}), ValidationError);
  EXPECT_NO_THROW(Measurement({CMatrix::identity(2)}, {0.3}));
  const auto z = Measurement::from_observable(oracle::zx_observable(0));
  EXPECT_LE(max_abs_diff(z.observable(), oracle::zx_observable(0)), 1e-15);
}

TEST(BehaviorExamples, ProductStateComputationalBasis) {
  const auto b = behavior(product_zero(2, 2), computational(2, 2));
  ASSERT_EQ(b.tables.size(), 1u);
  EXPECT_NEAR(b.tables[0][0], 1.0, 1e-15);
  for (std::size_t o = 1; o < 4; ++o) EXPECT_NEAR(b.tables[0][o], 0.0, 1e-15);
}

TEST(BehaviorExamples, WhiteNoiseUniform) {
  const auto b = behavior(white_noise(2, 2), chsh_optimal());
  for (const auto& t : b.tables)
    for (double p : t) EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(BehaviorExamples, BellStateChshCorrelators) {
  const auto m = chsh_optimal();
  const auto b = behavior(ghz(2, 2), m);
  const double sign[4] = {1, 1, 1, -1};
  for (std::size_t js = 0; js < 4; ++js) {
    const auto& t = b.tables[js];
    // outcome 0 is -1, outcome 1 is +1
    const double corr = t[0] - t[1] - t[2] + t[3];
    EXPECT_NEAR(corr, sign[js] / std::numbers::sqrt2, 1e-12);
  }
  EXPECT_NEAR(evaluate(chsh(), b), 2 * std::numbers::sqrt2, 1e-9);
  EXPECT_NEAR(violation_ratio(chsh(), ghz(2, 2), m), std::numbers::sqrt2, 1e-9);
}

TEST(BehaviorExamples, GhzMerminOptimum) {
  // sigma_phi = cos(phi) X + sin(phi) Y with a at -pi/6, a' at pi/3 gives
  // <sigma sigma sigma> = cos(phi1 + phi2 + phi3).
  MeasurementAssignment m;
  for (int n = 0; n < 3; ++n)
    m.parties.push_back({Measurement::from_observable(oracle::xy_observable(-kPi / 6)),
                         Measurement::from_observable(oracle::xy_observable(kPi / 3))});
  EXPECT_NEAR(violation_ratio(mermin(3), ghz(2, 3), m), 2.0, 1e-9);
}

TEST(BehaviorExamples, ProductStateNeverViolates) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    MeasurementAssignment m;
    for (int p = 0; p < 2; ++p) {
      std::uniform_real_distribution<double> ang(0, 2 * kPi);
      m.parties.push_back({Measurement::from_observable(oracle::zx_observable(ang(rng))),
                           Measurement::from_observable(oracle::zx_observable(ang(rng)))});
    }
    EXPECT_LE(violation_ratio(chsh(), product_zero(2, 2), m), 1.0 + 1e-12);
  }
}

TEST(BehaviorProperties, MatchesExplicitTensorOracle) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + t % 2, n = 2 + t % 3;
    if (d == 3 && n == 4) continue;
    const auto rho = oracle::random_state(d, n, rng);
    const auto m = random_assignment(d, n, rng);
    const auto b = behavior(rho, m);
    const auto o = oracle::behavior(rho, m);
    ASSERT_EQ(b.tables.size(), o.size());
    for (std::size_t js = 0; js < o.size(); ++js)
      for (std::size_t k = 0; k < o[js].size(); ++k) EXPECT_NEAR(b.tables[js][k], o[js][k], 1e-12);
  }
}

TEST(BehaviorProperties, NormalizationAndNonsignalingOnRandomInstances) {
  std::mt19937_64 rng(20240601);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 2, n = 2 + (t / 2) % 2;
    const auto b = behavior(oracle::random_state(d, n, rng), random_assignment(d, n, rng));
    EXPECT_GE(b.min_probability(), -1e-12) << t;
    EXPECT_LE(b.max_normalization_error(), 1e-9) << t;
    EXPECT_LE(b.max_signaling_deviation(), 1e-9) << t;
  }
}

TEST(BehaviorProperties, AffineInState) {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> u(0, 1), c(-1, 1);
  for (int t = 0; t < 25; ++t) {
    const auto z = oracle::random_state(2, 2, rng), r = oracle::random_state(2, 2, rng);
    const auto m = random_assignment(2, 2, rng);
    const double beta = u(rng);
    const auto sc = m.scenario();
    std::vector<std::vector<double>> coeffs;
    for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
      coeffs.emplace_back(sc.table_size(js));
      for (auto& x : coeffs.back()) x = c(rng);
    }
    const BellFunctional f(sc, coeffs);
    const double lhs = evaluate(f, behavior(mix(z, r, beta), m));
    const double rhs = (1 - beta) * evaluate(f, behavior(z, m)) + beta * evaluate(f, behavior(r, m));
    EXPECT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(ViolationRatio, ScaleInvariantAndDegenerate) {
  const auto m = chsh_optimal();
  const double base = violation_ratio(chsh(), ghz(2, 2), m);
  EXPECT_NEAR(violation_ratio(chsh().scaled(3.7), ghz(2, 2), m), base, 1e-12);
  EXPECT_NEAR(violation_ratio(chsh().scaled(0.01), ghz(2, 2), m), base, 1e-12);
  const auto sc = chsh().scenario();
  const BellFunctional zero(sc, std::vector<std::vector<double>>(4, std::vector<double>(4, 0.0)));
  EXPECT_THROW(violation_ratio(zero, ghz(2, 2), m), DomainError);
}

TEST(Evaluate, UniformIsSumOfCoefficientMeans) {
  std::mt19937_64 rng(1);
  const auto sc = Scenario::uniform(2, 2, 3);
  std::uniform_real_distribution<double> c(-2, 2);
  std::vector<std::vector<double>> coeffs;
  double expect = 0.0;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    coeffs.emplace_back(sc.table_size(js));
    double s = 0;
    for (auto& x : coeffs.back()) s += (x = c(rng));
    expect += s / static_cast<double>(sc.table_size(js));
  }
  EXPECT_NEAR(evaluate(BellFunctional(sc, coeffs), Behavior::uniform(sc)), expect, 1e-12);
  EXPECT_THROW(evaluate(chsh(), Behavior::uniform(sc)), ValidationError);
}

TEST(BehaviorErrors, DimensionMismatch) {
  EXPECT_THROW(behavior(ghz(3, 2), chsh_optimal()), ValidationError);
  EXPECT_THROW(behavior(ghz(2, 3), chsh_optimal()), ValidationError);
}
