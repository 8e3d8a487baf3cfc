#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dixie/errors.hpp"
#include "dixie/experiments.hpp"
#include "dixie/quadrature.hpp"

namespace dixie {
namespace {

StudyConfig exact_only() {
  StudyConfig cfg;
  cfg.simulation.trials = 0;
  return cfg;
}

TEST(Figure1, SmallestCaseMatchesOracle) {
  const std::vector<std::size_t> totals = {2};
  const auto report = study_figure1(1, exact_only(), totals);
  ASSERT_EQ(report.rows.size(), 1u);
  const auto dist = interlace({{WeightLaw::uniform(), WeightLaw::zipf(1.0)}, 1, 1});
  EXPECT_NEAR(*report.rows[0].exact, markov_oracle(dist, {1, 1}), 1e-7);
  EXPECT_FALSE(report.rows[0].simulated);
}

TEST(Figure1, SimulatedColumnAgrees) {
  StudyConfig cfg;
  cfg.simulation.trials = 20000;
  cfg.simulation.seed = 11;
  const std::vector<std::size_t> totals = {20, 40};
  const auto report = study_figure1(1, cfg, totals);
  for (const auto& row : report.rows) {
    ASSERT_TRUE(row.simulated && row.sim_stderr);
    EXPECT_NEAR(*row.simulated, *row.exact, 4 * *row.sim_stderr);
  }
}

TEST(Figure1, RatioToLeadingTermStabilizes) {
  const auto report = study_figure1(1, exact_only());
  std::vector<double> ratios;
  for (const auto& row : report.rows) {
    ASSERT_GT(*row.ratio_exact_over_asymptotic, 0.0);
    ratios.push_back(*row.ratio_exact_over_asymptotic);
  }
  for (std::size_t i = 2; i < ratios.size(); ++i) {
    EXPECT_LT(std::abs(ratios[i] - ratios[i - 1]), std::abs(ratios[i - 1] - ratios[i - 2]));
  }
}

TEST(Figure1, OddTotalRejected) {
  const std::vector<std::size_t> totals = {21};
  EXPECT_THROW(study_figure1(1, exact_only(), totals), DomainError);
}

TEST(Schur, OrderingAndLowerBound) {
  for (unsigned m : {1u, 2u}) {
    const auto report = study_schur(1, m, exact_only());
    EXPECT_EQ(report.rows.size(), 30u);
    EXPECT_TRUE(schur_ordering_holds(report));
    for (const auto& row : report.rows) EXPECT_GE(*row.exact, static_cast<double>(*row.total * m));
  }
  const std::vector<std::size_t> forty = {40};
  EXPECT_TRUE(schur_ordering_holds(study_schur(2, 1, exact_only(), forty)));
}

TEST(Schur, OrderingCheckDetectsViolation) {
  const std::vector<std::size_t> grid = {20};
  auto report = study_schur(1, 1, exact_only(), grid);
  for (auto& row : report.rows) {
    if (row.note == "uniform") row.exact = *row.exact * 1e6;
  }
  EXPECT_FALSE(schur_ordering_holds(report));
  EXPECT_FALSE(schur_ordering_holds(RunReport{}));
}

TEST(Theorem1, RatioImproves) {
  const std::vector<std::size_t> sizes = {25, 200};
  const auto report =
      study_theorem1({{WeightLaw::uniform(), WeightLaw::zipf(1.0)}, 0, 1}, 1, exact_only(), sizes);
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_LT(std::abs(*report.rows[1].ratio_exact_over_estimate - 1.0),
            std::abs(*report.rows[0].ratio_exact_over_estimate - 1.0));
}

TEST(Theorem1, DegenerateSingleFamily) {
  const std::vector<std::size_t> sizes = {10, 40};
  const auto report = study_theorem1({{WeightLaw::zipf(1.0)}, 0, 0}, 1, exact_only(), sizes);
  for (const auto& row : report.rows) EXPECT_NEAR(*row.ratio_exact_over_estimate, 1.0, 1e-7);
}

// Example 1 regime. The ratio to the leading term is not monotone in M
// (see the Zipf L1 ratio); only its smallness of variation is checked.
TEST(Theorem1, PowerZipfRatioStaysBounded) {
  const std::vector<std::size_t> sizes = {50, 100, 200, 400};
  const auto report = study_theorem1({{WeightLaw::power(2.0), WeightLaw::zipf(2.0)}, 0, std::nullopt},
                                     1, exact_only(), sizes);
  std::vector<double> ratios;
  for (const auto& row : report.rows) {
    ratios.push_back(*row.ratio_exact_over_asymptotic);
    EXPECT_NE(row.note.find("ln_excess="), std::string::npos);
  }
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    EXPECT_LT(std::abs(ratios[i] / ratios[i - 1] - 1.0), 0.03);
  }
}

TEST(Table1, RowsAndFlags) {
  const auto report = study_table1(1, exact_only());
  std::size_t factorial_rows = 0;
  for (const auto& row : report.rows) {
    ASSERT_TRUE(row.exact && row.asymptotic && row.ratio_exact_over_asymptotic);
    EXPECT_TRUE(std::isfinite(*row.ratio_exact_over_asymptotic)) << row.family;
    EXPECT_GT(*row.ratio_exact_over_asymptotic, 0.0) << row.family;
    if (row.family == "factorial") {
      ++factorial_rows;
      EXPECT_LE(*row.size, 170u);
    }
    if (row.study_id == "table1_l1" && row.family == "recipfactorial") {
      EXPECT_EQ(row.note, "constant_unknown");
    }
    if (row.study_id == "table1_sum" && row.family == "zipf:p=2" && *row.size == 400) {
      EXPECT_NEAR(*row.exact, 1.642437189244063025, 1e-12);
    }
    if (row.study_id == "table1_sum" && row.family == "expdecay:p=1" && *row.size == 50) {
      EXPECT_NEAR(*row.exact, 1.5819767068693264244, 1e-10);
    }
  }
  EXPECT_EQ(factorial_rows, 2u);
}

}  // namespace
}  // namespace dixie
