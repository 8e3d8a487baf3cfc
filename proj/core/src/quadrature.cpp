#include "dixie/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dixie/errors.hpp"
#include "dixie/gauss_kronrod.hpp"
#include "dixie/numeric.hpp"

namespace dixie {
namespace {

constexpr int kMaxDoublings = 200;
constexpr std::size_t kInitialPieces = 8;

void check_query(const CollectorQuery& query) {
  if (query.m < 1) throw DomainError("number of sets m must be at least 1");
  if (query.r < 1 || query.r > kMaxRisingOrder) {
    throw DomainError("rising-moment order r must be in 1.." + std::to_string(kMaxRisingOrder) +
                      ", got " + std::to_string(query.r));
  }
}

void check_config(const QuadratureConfig& cfg) {
  if (!(cfg.rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(cfg.abs_floor > 0.0)) throw DomainError("abs_floor must be positive");
  if (cfg.max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
}

// Grouped ln prod_j P[Poisson(rate_j u) >= m], with no early cutoff.
class LogCompletion {
 public:
  LogCompletion(std::span<const double> rates, unsigned m) : tail_(m) {
    std::vector<double> sorted(rates.begin(), rates.end());
    std::sort(sorted.begin(), sorted.end());
    for (double r : sorted) {
      if (!groups_.empty() && groups_.back().first == r) {
        groups_.back().second += 1.0;
      } else {
        groups_.emplace_back(r, 1.0);
      }
    }
  }

  double operator()(double u) const {
    double acc = 0.0;
    for (const auto& [rate, count] : groups_) acc += count * tail_.log_tail(rate * u);
    return acc;
  }

  // ln(1 - prod_j P[...]) without underflow once the product is within
  // e^{-745} of 1.
  double log_incomplete(double u) const {
    const double log_product = (*this)(u);
    if (log_product < -1e-5) return std::log(-std::expm1(log_product));
    // -log_product = sum_j count_j * -ln(1 - head_j), summed in log space.
    std::vector<double> logs;
    logs.reserve(groups_.size());
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& [rate, count] : groups_) {
      const double lh = tail_.log_head(rate * u);
      const double lv = lh < -30.0 ? lh : std::log(-std::log1p(-std::exp(lh)));
      logs.push_back(std::log(count) + lv);
      top = std::max(top, logs.back());
    }
    if (!std::isfinite(top)) return top;
    double sum = 0.0;
    for (double l : logs) sum += std::exp(l - top);
    const double log_minus = top + std::log(sum);  // ln(-log_product)
    const double s = -std::exp(log_minus);
    // 1 - e^{s} = -s (1 + s/2 + s^2/6 + ...)
    return log_minus + std::log1p(s / 2.0 + s * s / 6.0);
  }

 private:
  PoissonTail tail_;
  std::vector<std::pair<double, double>> groups_;
};

const WeightLaw& checked_rare_law(const InterlacedFamily& family, const char* caller) {
  if (!family.rare_index) throw DomainError(std::string(caller) + " requires a rare subfamily index");
  const std::size_t rare = *family.rare_index;
  if (rare >= family.k()) throw DomainError("rare subfamily index out of range");
  const WeightLaw& law = family.subfamilies[rare];
  if (law.rarity_class() != RarityClass::CaseII) {
    throw HypothesisError("rare subfamily " + law.spec() +
                          " is a Case I law; its coupons are not asymptotically rare");
  }
  return law;
}

}  // namespace

SurvivalIntegrand::SurvivalIntegrand(std::span<const double> rates, unsigned m) : tail_(m) {
  if (rates.empty()) throw DomainError("survival integrand needs at least one rate");
  std::vector<double> sorted(rates.begin(), rates.end());
  for (double r : sorted) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("rates must be positive and finite");
  }
  std::sort(sorted.begin(), sorted.end());
  for (double r : sorted) {
    if (!groups_.empty() && groups_.back().first == r) {
      groups_.back().second += 1.0;
    } else {
      groups_.emplace_back(r, 1.0);
    }
  }
  count_ = sorted.size();
}

double SurvivalIntegrand::operator()(double t) const {
  if (t <= 0.0) return 1.0;
  // ln prod_j tail_j. Once below -40, g rounds to exactly 1;
  // slow coupons come first so this cut happens early for small t.
  constexpr double kLogUnderflow = -40.0;  // 1 - e^{-40} rounds to 1
  double log_product = 0.0;
  for (const auto& [rate, count] : groups_) {
    log_product += count * tail_.log_tail(rate * t);
    if (log_product < kLogUnderflow) return 1.0;
  }
  return -std::expm1(log_product);
}

MomentResult integrate_survival(std::span<const double> rates, CollectorQuery query,
                                const QuadratureConfig& cfg) {
  check_query(query);
  check_config(cfg);
  const SurvivalIntegrand g(rates, query.m);

  const double n = static_cast<double>(g.coupon_count());
  const double log_n = std::log(n);
  double t_hi = (log_n + query.m * std::log(log_n + 2.0) + 30.0) / g.min_rate();
  double g_hi = g(t_hi);
  for (int i = 0; g_hi >= cfg.abs_floor; ++i) {
    if (i == kMaxDoublings || !std::isfinite(t_hi)) {
      throw QuadratureError("could not locate a finite upper limit for the survival integral", 0.0,
                            std::numeric_limits<double>::infinity());
    }
    t_hi *= 2.0;
    g_hi = g(t_hi);
  }

  const unsigned r = query.r;
  const auto weighted = [&](double t) {
    double w = 1.0;
    for (unsigned i = 1; i < r; ++i) w *= t;
    return g(t) * w;
  };
  const auto res = integrate_adaptive(weighted, 0.0, t_hi, cfg.rel_tol, cfg.max_subdivisions,
                                      kInitialPieces);
  const double scale = static_cast<double>(r);
  // The discarded tail is bounded by g(t_hi) t_hi^r since g decays faster
  // than e^{-min_rate t} past t_hi and min_rate * t_hi >= 30.
  const double tail_bound = scale * g_hi * std::pow(t_hi, static_cast<double>(r));

  MomentResult out;
  out.value = scale * res.value;
  out.est_error = scale * res.error + tail_bound;
  out.integrand_evals = res.evaluations + 1;
  if (!res.converged) {
    throw QuadratureError("survival integral did not converge after " +
                              std::to_string(res.intervals) + " subdivisions",
                          out.value, out.est_error);
  }
  return out;
}

MomentResult exact_rising_moment(const CouponDistribution& dist, CollectorQuery query,
                                 const QuadratureConfig& cfg) {
  return integrate_survival(dist.probs, query, cfg);
}

MomentResult l1_integral(std::span<const double> raw_weights, unsigned m,
                         const QuadratureConfig& cfg) {
  return integrate_survival(raw_weights, CollectorQuery{m, 1}, cfg);
}

double theorem1_estimate(const InterlacedFamily& family, unsigned m, const QuadratureConfig& cfg) {
  const WeightLaw& law = checked_rare_law(family, "theorem1_estimate");
  CompensatedSum total;
  for (const auto& sub : family.subfamilies) total.add(partial_sum(sub, family.per_family_size));
  const auto weights = generate_weights(law, family.per_family_size);
  return total.value() * l1_integral(weights, m, cfg).value;
}

double theorem1_log_excess(const InterlacedFamily& family, unsigned m,
                           const QuadratureConfig& cfg) {
  const WeightLaw& law = checked_rare_law(family, "theorem1_log_excess");
  check_query({m, 1});
  check_config(cfg);
  const std::size_t size = family.per_family_size;
  const auto rare_weights = generate_weights(law, size);
  std::vector<double> rest;
  for (std::size_t s = 0; s < family.k(); ++s) {
    if (s == *family.rare_index) continue;
    const auto w = generate_weights(family.subfamilies[s], size);
    rest.insert(rest.end(), w.begin(), w.end());
  }
  if (rest.empty()) return -std::numeric_limits<double>::infinity();

  const LogCompletion rare_done(rare_weights, m);
  const LogCompletion rest_done(rest, m);
  // ln of the integrand Pi_rare(u) (1 - Pi_rest(u)); -inf where it underflows.
  const auto log_h = [&](double u) { return rare_done(u) + rest_done.log_incomplete(u); };

  // Bracket the mass on a doubling grid around the scale of the fast coupons.
  constexpr double kDrop = 60.0;
  const double b_min = *std::min_element(rest.begin(), rest.end());
  const double n = static_cast<double>(rest.size());
  const double u0 = (std::log(n) + m * std::log(std::log(n) + 2.0) + 1.0) / b_min;
  std::vector<double> grid = {u0};
  std::vector<double> logs = {log_h(u0)};
  double peak = logs.front();
  for (int i = 0; i < 2 * kMaxDoublings; ++i) {
    const bool low_done = logs.front() < peak - kDrop;
    const bool high_done = logs.back() < peak - kDrop;
    if (low_done && high_done) break;
    if (!low_done) {
      grid.insert(grid.begin(), grid.front() / 2.0);
      logs.insert(logs.begin(), log_h(grid.front()));
      peak = std::max(peak, logs.front());
    }
    if (!high_done) {
      grid.push_back(grid.back() * 2.0);
      logs.push_back(log_h(grid.back()));
      peak = std::max(peak, logs.back());
    }
  }
  if (!std::isfinite(peak)) {
    throw QuadratureError("excess integrand underflows everywhere", 0.0,
                          std::numeric_limits<double>::infinity());
  }
  // The log integrand can move by hundreds over one doubling for large M;
  // refine so each piece spans a modest dynamic range and the peak is sharp.
  constexpr int kRefine = 32;
  std::vector<double> fine;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    for (int j = 0; j < kRefine; ++j) {
      const double u = grid[i] * std::exp2(static_cast<double>(j) / kRefine);
      fine.push_back(u);
      peak = std::max(peak, log_h(u));
    }
  }
  fine.push_back(grid.back());
  grid = std::move(fine);

  const auto scaled = [&](double u) { return std::exp(log_h(u) - peak); };
  CompensatedSum total;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const auto res = integrate_adaptive(scaled, grid[i], grid[i + 1], cfg.rel_tol,
                                        cfg.max_subdivisions, kInitialPieces);
    if (!res.converged) {
      throw QuadratureError("excess integral did not converge", res.value, res.error);
    }
    total.add(res.value);
  }
  const double l1 = l1_integral(rare_weights, m, cfg).value;
  return peak + std::log(total.value()) - std::log(l1);
}

}  // namespace dixie
