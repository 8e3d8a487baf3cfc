#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dixie/poisson.hpp"
#include "dixie/weights.hpp"

namespace dixie {

// The statistic requested: m complete sets, r-th rising moment (r = 1 is the mean).
struct CollectorQuery {
  unsigned m = 1;
  unsigned r = 1;
};

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_floor = 1e-14;  // the integrand is treated as zero below this
  std::size_t max_subdivisions = 2000;
};

struct MomentResult {
  double value = 0.0;
  double est_error = 0.0;
  std::size_t integrand_evals = 0;
};

inline constexpr unsigned kMaxRisingOrder = 4;

/// Survival function of the Poissonized collection time:
/// g(t) = 1 - prod_j P[Poisson(rate_j t) >= m].
///
/// Equal rates are merged and the product is accumulated as a sum of logs.
class SurvivalIntegrand {
 public:
  SurvivalIntegrand(std::span<const double> rates, unsigned m);

  double operator()(double t) const;

  double min_rate() const noexcept { return groups_.front().first; }
  double max_rate() const noexcept { return groups_.back().first; }
  std::size_t coupon_count() const noexcept { return count_; }

 private:
  PoissonTail tail_;
  std::vector<std::pair<double, double>> groups_;  // (rate, multiplicity), ascending rate
  std::size_t count_ = 0;
};

// r * int_0^inf g(t) t^{r-1} dt for the given rates. Raw building block of the
// operations below; throws QuadratureError on non-convergence.
MomentResult integrate_survival(std::span<const double> rates, CollectorQuery query,
                                const QuadratureConfig& cfg = {});

// E[T_m^{(r)}] for a coupon distribution.
MomentResult exact_rising_moment(const CouponDistribution& dist, CollectorQuery query,
                                 const QuadratureConfig& cfg = {});

// L1 = int_0^inf [1 - prod_j (1 - S_m(d_j u) e^{-d_j u})] du over raw weights d.
MomentResult l1_integral(std::span<const double> raw_weights, unsigned m,
                         const QuadratureConfig& cfg = {});

// (sum of all subfamily totals) * L1(rare subfamily). Requires a Case II rare subfamily.
double theorem1_estimate(const InterlacedFamily& family, unsigned m,
                         const QuadratureConfig& cfg = {});

// ln(E[T_m] / theorem1_estimate - 1). The excess equals
// int Pi_rare (1 - Pi_rest) du / L1(rare) and is integrated directly in log
// space, so it stays resolvable after the ratio itself rounds to 1.
// -inf for a single-family problem.
double theorem1_log_excess(const InterlacedFamily& family, unsigned m,
                           const QuadratureConfig& cfg = {});

inline constexpr double kDefaultMarkovStateLimit = 1e7;

/// Exact E[T_m] (r = 1) or E[T_m (T_m + 1)] (r = 2) from the absorbing chain
/// over per-type counts capped at m. Independent of the integral representation.
double markov_oracle(const CouponDistribution& dist, CollectorQuery query,
                     double max_states = kDefaultMarkovStateLimit);

}  // namespace dixie
