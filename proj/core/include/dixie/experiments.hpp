#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dixie/montecarlo.hpp"
#include "dixie/quadrature.hpp"
#include "dixie/report.hpp"
#include "dixie/weights.hpp"

namespace dixie {

struct StudyConfig {
  QuadratureConfig quadrature;
  SimulationConfig simulation;  // simulation.trials == 0 skips the simulated column
  unsigned workers = 0;         // grid-level parallelism; 0 = default_workers()
};

// Default grids.
inline const std::vector<std::size_t> kFigure1TotalGrid = {20, 40, 80, 160, 320};
inline const std::vector<std::size_t> kSchurTotalGrid = {20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
inline const std::vector<std::size_t> kTheorem1SizeGrid = {25, 50, 100, 200, 400};
inline const std::vector<std::size_t> kTable1SizeGrid = {50, 100, 200, 400};

// Half uniform, half standard Zipf: simulated mean, exact quadrature and the
// leading term N^2 ln N / 4 over a grid of (even) N.
RunReport study_figure1(unsigned m, const StudyConfig& cfg,
                        std::span<const std::size_t> totals = kFigure1TotalGrid);

// Odd coupons a_{2j-1} = j fixed; even coupons uniform, j^3 or j^-2. Exact
// E[T_m^{(r)}] for each choice over a grid of N.
RunReport study_schur(unsigned r, unsigned m, const StudyConfig& cfg,
                      std::span<const std::size_t> totals = kSchurTotalGrid);

// True when, at every N in the report, the uniform even law gives the strictly
// smallest exact value.
bool schur_ordering_holds(const RunReport& report);

// Exact expectation against the product estimate and the leading term over a grid of M.
RunReport study_theorem1(const InterlacedFamily& family, unsigned m, const StudyConfig& cfg,
                         std::span<const std::size_t> sizes = kTheorem1SizeGrid);

// Partial sums against leading sums for every catalogued law, and L1 against
// its leading term for every Case II law. Rows beyond a law's representable M are omitted.
RunReport study_table1(unsigned m, const StudyConfig& cfg,
                       std::span<const std::size_t> sizes = kTable1SizeGrid);

// Representative parameters for each row of the leading-asymptotics table.
std::vector<WeightLaw> table1_catalogue();

}  // namespace dixie
