#include "dixie/montecarlo.hpp"

#include <cmath>
#include <string>

#include "dixie/errors.hpp"
#include "dixie/numeric.hpp"
#include "dixie/parallel.hpp"

namespace dixie {
namespace {

constexpr std::size_t kTrialChunk = 256;

std::optional<std::uint64_t> run_trial(const AliasSampler& sampler, unsigned m, StreamRng& rng,
                                       std::uint64_t draw_cap, std::vector<std::uint32_t>& counts) {
  counts.assign(sampler.size(), 0);
  std::size_t remaining = sampler.size();
  for (std::uint64_t draws = 1; draws <= draw_cap; ++draws) {
    auto& c = counts[sampler(rng)];
    if (c < m && ++c == m && --remaining == 0) return draws;
  }
  return std::nullopt;
}

std::size_t resolve_rare(const InterlacedFamily& family) {
  const auto rare = family.rare_index ? family.rare_index : unique_case_two(family.subfamilies);
  if (!rare) throw DomainError("rare subfamily is ambiguous for " + family.spec());
  if (*rare >= family.k()) throw DomainError("rare subfamily index out of range");
  return *rare;
}

}  // namespace

AliasSampler::AliasSampler(std::span<const double> probs)
    : threshold_(probs.size()), alias_(probs.size()) {
  const std::size_t n = probs.size();
  if (n == 0) throw DomainError("alias table needs at least one outcome");
  CompensatedSum total;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("probabilities must be finite and >= 0");
    total.add(p);
  }
  std::vector<double> scaled(n);
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = probs[i] * static_cast<double>(n) / total.value();
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    threshold_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::size_t i : large) {
    threshold_[i] = 1.0;
    alias_[i] = i;
  }
  for (std::size_t i : small) {
    threshold_[i] = 1.0;
    alias_[i] = i;
  }
}

std::optional<std::uint64_t> simulate_once(const AliasSampler& sampler, unsigned m,
                                           StreamRng& rng, std::uint64_t draw_cap) {
  if (m < 1) throw DomainError("number of sets m must be at least 1");
  std::vector<std::uint32_t> counts;
  return run_trial(sampler, m, rng, draw_cap, counts);
}

SimSummary simulate_summary(const CouponDistribution& dist, unsigned m,
                            const SimulationConfig& cfg) {
  if (m < 1) throw DomainError("number of sets m must be at least 1");
  if (cfg.trials < 1) throw DomainError("trials must be at least 1");
  const AliasSampler sampler(dist.probs);

  std::vector<std::uint64_t> results(cfg.trials, 0);
  std::vector<std::uint8_t> capped(cfg.trials, 0);
  const std::size_t chunks = (cfg.trials + kTrialChunk - 1) / kTrialChunk;
  parallel_for(chunks, cfg.workers, [&](std::size_t chunk) {
    std::vector<std::uint32_t> counts;
    const std::size_t begin = chunk * kTrialChunk;
    const std::size_t end = std::min(cfg.trials, begin + kTrialChunk);
    for (std::size_t i = begin; i < end; ++i) {
      StreamRng rng(cfg.seed, i);
      const auto draws = run_trial(sampler, m, rng, cfg.draw_cap, counts);
      if (draws) {
        results[i] = *draws;
      } else {
        capped[i] = 1;
      }
    }
  });

  // Aggregate serially in trial order so the summary does not depend on scheduling.
  SimSummary out;
  CompensatedSum sum;
  CompensatedSum rising;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    if (capped[i]) {
      ++out.capped_trials;
      continue;
    }
    const double t = static_cast<double>(results[i]);
    sum.add(t);
    rising.add(t * (t + 1.0));
    ++out.trials_completed;
  }
  if (out.trials_completed == 0) return out;
  const double n = static_cast<double>(out.trials_completed);
  out.mean = sum.value() / n;
  out.second_rising = rising.value() / n;
  CompensatedSum dev;
  CompensatedSum dev_rising;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    if (capped[i]) continue;
    const double t = static_cast<double>(results[i]);
    dev.add((t - out.mean) * (t - out.mean));
    const double q = t * (t + 1.0) - out.second_rising;
    dev_rising.add(q * q);
  }
  if (out.trials_completed > 1) {
    out.std_error = std::sqrt(dev.value() / (n - 1.0) / n);
    out.second_rising_std_error = std::sqrt(dev_rising.value() / (n - 1.0) / n);
  }
  return out;
}

InterarrivalStats interarrival_stats(const InterlacedFamily& family, std::uint64_t total_draws,
                                     StreamRng& rng) {
  const std::size_t rare = resolve_rare(family);
  const auto dist = interlace(family);
  const AliasSampler sampler(dist.probs);
  const std::size_t k = family.k();

  std::vector<std::uint64_t> blocks;
  std::uint64_t current = 0;
  for (std::uint64_t d = 0; d < total_draws; ++d) {
    ++current;
    if (sampler(rng) % k == rare) {
      blocks.push_back(current);
      current = 0;
    }
  }
  if (blocks.empty()) {
    throw DomainError("no completed W-blocks within " + std::to_string(total_draws) + " draws");
  }

  InterarrivalStats out;
  out.count = blocks.size();
  const double p = dist.subfamily_totals[rare] / dist.weight_total;
  out.expected_mean = dist.weight_total / dist.subfamily_totals[rare];
  out.expected_var = (1.0 - p) / (p * p);

  const double n = static_cast<double>(out.count);
  CompensatedSum sum;
  for (auto w : blocks) sum.add(static_cast<double>(w));
  out.sample_mean = sum.value() / n;
  CompensatedSum m2;
  CompensatedSum m4;
  for (auto w : blocks) {
    const double d = static_cast<double>(w) - out.sample_mean;
    m2.add(d * d);
    m4.add(d * d * d * d);
  }
  out.sample_var = out.count > 1 ? m2.value() / (n - 1.0) : 0.0;
  out.mean_std_error = std::sqrt(out.sample_var / n);
  const double fourth = m4.value() / n;
  const double var_biased = m2.value() / n;
  out.var_std_error = std::sqrt(std::max(0.0, fourth - var_biased * var_biased) / n);
  return out;
}

std::vector<WaldPoint> wald_check(const InterlacedFamily& family, unsigned m,
                                  std::span<const std::size_t> sizes, const QuadratureConfig& cfg,
                                  unsigned workers) {
  const std::size_t rare = resolve_rare(family);
  if (family.subfamilies[rare].rarity_class() != RarityClass::CaseII) {
    throw HypothesisError("rare subfamily " + family.subfamilies[rare].spec() +
                          " is a Case I law");
  }
  std::vector<WaldPoint> out(sizes.size());
  parallel_for(sizes.size(), workers, [&](std::size_t i) {
    InterlacedFamily at = family;
    at.per_family_size = sizes[i];
    at.rare_index = rare;
    const auto full = interlace(at);
    const auto delta = subfamily_distribution(at, rare);
    WaldPoint& point = out[i];
    point.size = sizes[i];
    point.exact_full = exact_rising_moment(full, {m, 1}, cfg).value;
    point.exact_rare = exact_rising_moment(delta, {m, 1}, cfg).value;
    point.mean_block = full.weight_total / full.subfamily_totals[rare];
    point.ratio = point.exact_full / (point.exact_rare * point.mean_block);
  });
  return out;
}

}  // namespace dixie
