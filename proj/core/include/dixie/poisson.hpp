#pragma once

#include <vector>

namespace dixie {

// P[Poisson(x) >= m] = 1 - S_m(x) e^{-x}, with S_m the m-term exponential partial sum.
//
// Evaluated without cancellation: below the crossover x < m + 1 the
// complementary series e^{-x} sum_{i>=m} x^i/i! is summed; above it the
// finite lower sum is formed and subtracted.
double poisson_tail(unsigned m, double x);

// The lower probability S_m(x) e^{-x} = P[Poisson(x) < m].
double poisson_head(unsigned m, double x);

/// Evaluates ln P[Poisson(x) >= m] for a fixed m.
///
/// Works in log space throughout so that very small tails (tiny x, large m)
/// do not underflow, and uses log1p when the tail is close to 1.
class PoissonTail {
 public:
  explicit PoissonTail(unsigned m);

  unsigned m() const noexcept { return m_; }

  double log_tail(double x) const;
  double tail(double x) const;
  double head(double x) const;
  // ln P[Poisson(x) < m], finite long after head() underflows.
  double log_head(double x) const;

 private:
  // ln of the complementary series e^{-x} sum_{i>=m} x^i/i!, for x < m + 1.
  double log_series_tail(double x) const;
  // S_m(x) e^{-x}, for x >= m + 1.
  double direct_head(double x) const;

  unsigned m_;
  std::vector<double> log_factorial_;  // ln i! for i = 0..m
};

}  // namespace dixie
