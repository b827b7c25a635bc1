#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <belltol/errors.hpp>
#include <belltol/quantum_value.hpp>

using namespace belltol;

TEST(Seesaw, ChshOnBellState) {
  const auto r = seesaw(chsh(), ghz(2, 2));
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-6);
  EXPECT_EQ(r.restarts_used, 20u);
  EXPECT_NEAR(violation_ratio(chsh(), ghz(2, 2), r.assignment), r.value, 1e-9);
}

TEST(Seesaw, MerminOnGhz) {
  for (std::size_t n = 3; n <= 4; ++n) {
    const auto r = seesaw(mermin(n), ghz(2, n));
    EXPECT_NEAR(r.value, std::pow(2.0, (n - 1) / 2.0), 1e-6) << n;
  }
}

TEST(Seesaw, WhiteNoiseStaysLocal) {
  // Every local operator vanishes, so sign(0) = +1 turns each observable into
  // the identity; that assignment reaches the LHV value and no more.
  const auto r = seesaw(chsh(), white_noise(2, 2), {.restarts = 3});
  EXPECT_LE(r.value, 1.0 + 1e-9);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(Seesaw, QutritStatesSupported) {
  const auto r = seesaw(chsh(), ghz(3, 2), {.restarts = 5});
  EXPECT_GE(r.value, 1.0);
  EXPECT_LE(r.value, std::sqrt(2.0) + 1e-9);  // Tsirelson bound
}

TEST(Seesaw, TracesAreMonotone) {
  for (const auto& [f, rho] : {std::pair{mermin(3), ghz(2, 3)}, std::pair{mermin(4), dicke(4, 2)},
                               std::pair{chsh(), ghz(3, 2)}}) {
    const auto r = seesaw(f, rho, {.restarts = 8, .seed = 17});
    for (const auto& trace : r.restart_traces)
      for (std::size_t k = 1; k < trace.size(); ++k) EXPECT_GE(trace[k], trace[k - 1] - 1e-12);
  }
}

TEST(Seesaw, DeterministicAcrossThreadCounts) {
  const auto a = seesaw(mermin(3), ghz(2, 3), {.restarts = 6, .seed = 5, .threads = 1});
  const auto b = seesaw(mermin(3), ghz(2, 3), {.restarts = 6, .seed = 5, .threads = 4});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.restart_traces, b.restart_traces);
  const auto c = seesaw(mermin(3), ghz(2, 3), {.restarts = 6, .seed = 6});
  EXPECT_NE(a.restart_traces, c.restart_traces);
}

TEST(Seesaw, RejectsNonCorrelationFunctionals) {
  const auto sc = Scenario::uniform(2, 2, 2);
  std::vector<std::vector<double>> c(4, std::vector<double>(4, 0.0));
  c[0] = {1, 0, 0, 0};  // projector onto one joint outcome
  EXPECT_THROW(seesaw(BellFunctional(sc, c), ghz(2, 2)), UnsupportedFunctionalError);
  const auto three = Scenario::uniform(2, 2, 3);
  std::vector<std::vector<double>> c3(4, std::vector<double>(9, 1.0));
  EXPECT_THROW(seesaw(BellFunctional(three, c3), ghz(2, 2)), UnsupportedFunctionalError);
  const Scenario shifted({{{-1, 0.5}, {-1, 1}}, {{-1, 1}, {-1, 1}}});
  EXPECT_THROW(seesaw(BellFunctional(shifted, std::vector<std::vector<double>>(4, std::vector<double>(4, 1.0))), ghz(2, 2)),
               UnsupportedFunctionalError);
}

TEST(Seesaw, ScaledFunctionalSameRatio) {
  const auto a = seesaw(chsh(), ghz(2, 2), {.restarts = 4});
  const auto b = seesaw(chsh().scaled(-5), ghz(2, 2), {.restarts = 4});
  EXPECT_NEAR(a.value, b.value, 1e-9);
}

TEST(Seesaw, Errors) {
  EXPECT_THROW(seesaw(chsh(), ghz(2, 3)), ValidationError);
  EXPECT_THROW(seesaw(chsh(), ghz(2, 2), {.restarts = 0}), DomainError);
  const auto sc = Scenario::uniform(2, 2, 2);
  EXPECT_THROW(seesaw(BellFunctional(sc, std::vector<std::vector<double>>(4, std::vector<double>(4, 0.0))), ghz(2, 2)),
               DomainError);
}

TEST(Seesaw, TraceCsv) {
  const auto r = seesaw(chsh(), ghz(2, 2), {.restarts = 2});
  std::ostringstream os;
  write_seesaw_trace_csv(os, r);
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("restart,sweep,objective\n0,0,", 0), 0u);
  EXPECT_NE(s.find("\n1,0,"), std::string::npos);
}

TEST(UpsilonLowerBound, Library) {
  const auto lib3 = default_functional_library(3);
  ASSERT_EQ(lib3.size(), 4u);
  const auto u = upsilon_lower_bound(ghz(2, 3), lib3);
  EXPECT_NEAR(u.value, 2.0, 1e-6);
  EXPECT_EQ(u.functional_name, "mermin3");
  const std::vector<BellFunctional> just{chsh()};
  EXPECT_NEAR(upsilon_lower_bound(ghz(2, 2), just).value, std::sqrt(2.0), 1e-6);
  EXPECT_LE(upsilon_lower_bound(product_zero(2, 2), just).value, 1.0 + 1e-9);
  EXPECT_THROW(upsilon_lower_bound(ghz(2, 2), std::span<const BellFunctional>{}), DomainError);
}
