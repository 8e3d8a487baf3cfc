#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dixie/quadrature.hpp"
#include "dixie/rng.hpp"
#include "dixie/weights.hpp"

namespace dixie {

/// Walker/Vose alias table: O(N) build, O(1) categorical draws.
class AliasSampler {
 public:
  explicit AliasSampler(std::span<const double> probs);

  std::size_t operator()(StreamRng& rng) const noexcept {
    const auto column = static_cast<std::size_t>(rng.below(threshold_.size()));
    return rng.uniform() < threshold_[column] ? column : alias_[column];
  }

  std::size_t size() const noexcept { return threshold_.size(); }

 private:
  std::vector<double> threshold_;
  std::vector<std::size_t> alias_;
};

struct SimulationConfig {
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t draw_cap = 1'000'000'000;
  unsigned workers = 0;  // 0 = default_workers(); never changes the result
};

struct SimSummary {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(trials)
  double second_rising = 0.0;  // empirical E[T (T + 1)]
  double second_rising_std_error = 0.0;
  std::size_t trials_completed = 0;
  std::size_t capped_trials = 0;

  bool tainted() const noexcept { return capped_trials > 0; }
};

// Draws from `sampler` until every type has been seen m times. Returns the
// number of draws, or nullopt if `draw_cap` draws did not suffice.
std::optional<std::uint64_t> simulate_once(const AliasSampler& sampler, unsigned m,
                                           StreamRng& rng,
                                           std::uint64_t draw_cap = 1'000'000'000);

// Trial i uses StreamRng(cfg.seed, i); the summary is bit-identical for any worker count.
SimSummary simulate_summary(const CouponDistribution& dist, unsigned m,
                            const SimulationConfig& cfg);

struct InterarrivalStats {
  double sample_mean = 0.0;
  double sample_var = 0.0;
  std::size_t count = 0;       // completed W-blocks
  double expected_mean = 0.0;  // A_N / D_M
  double expected_var = 0.0;   // (1 - p) / p^2, p = D_M / A_N
  double mean_std_error = 0.0;
  double var_std_error = 0.0;  // sqrt((m4 - s^4) / count)
};

// Draws `total_draws` coupons from the interlaced distribution and records
// W = draws up to and including each rare-subfamily draw.
InterarrivalStats interarrival_stats(const InterlacedFamily& family, std::uint64_t total_draws,
                                     StreamRng& rng);

struct WaldPoint {
  std::size_t size = 0;       // M
  double exact_full = 0.0;    // E[T_m(N; alpha)]
  double exact_rare = 0.0;    // E[T_m(M; delta)]
  double mean_block = 0.0;    // A_N / D_M
  double ratio = 0.0;         // exact_full / (exact_rare * mean_block)
};

// Compares the full expectation with the Wald decomposition over a grid of M.
std::vector<WaldPoint> wald_check(const InterlacedFamily& family, unsigned m,
                                  std::span<const std::size_t> sizes,
                                  const QuadratureConfig& cfg = {}, unsigned workers = 0);

}  // namespace dixie
