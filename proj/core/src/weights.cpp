#include "dixie/weights.hpp"

#include <cmath>
#include <limits>

#include "dixie/errors.hpp"
#include "dixie/numeric.hpp"
#include "format.hpp"

namespace dixie {
namespace {

// exp(700) ~ 1e304 leaves headroom for summing a few hundred such terms.
constexpr double kMaxExponent = 700.0;
constexpr std::size_t kMaxFactorialIndex = 170;
constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

std::size_t size_from_log_bound(double log_bound) {
  // Largest M with ln M <= log_bound.
  if (log_bound >= std::log(static_cast<double>(kUnbounded))) return kUnbounded;
  return static_cast<std::size_t>(std::floor(std::exp(log_bound)));
}

std::string format_param(double value) { return detail::shortest(value); }

}  // namespace

WeightLaw WeightLaw::uniform() { return {LawKind::Uniform, 0.0}; }

WeightLaw WeightLaw::power(double r) {
  require_positive(r, "power law exponent r");
  return {LawKind::PositivePower, r};
}

WeightLaw WeightLaw::zipf(double p) {
  require_positive(p, "Zipf exponent p");
  return {LawKind::Zipf, p};
}

WeightLaw WeightLaw::logarithmic(double r) {
  require_positive(r, "logarithmic exponent r");
  return {LawKind::Logarithmic, r};
}

WeightLaw WeightLaw::exp_grow(double p) {
  require_positive(p, "exponential rate p");
  return {LawKind::ExponentialGrow, p};
}

WeightLaw WeightLaw::exp_decay(double p) {
  require_positive(p, "exponential rate p");
  return {LawKind::ExponentialDecay, p};
}

WeightLaw WeightLaw::factorial() { return {LawKind::Factorial, 0.0}; }

WeightLaw WeightLaw::reciprocal_factorial() { return {LawKind::ReciprocalFactorial, 0.0}; }

WeightLaw WeightLaw::super_exponential(double c) {
  require_positive(c, "super-exponential scale c");
  return {LawKind::SuperExponential, c};
}

bool WeightLaw::has_param() const noexcept {
  switch (kind_) {
    case LawKind::Uniform:
    case LawKind::Factorial:
    case LawKind::ReciprocalFactorial:
      return false;
    default:
      return true;
  }
}

RarityClass WeightLaw::rarity_class() const noexcept {
  switch (kind_) {
    case LawKind::Uniform:
    case LawKind::Zipf:
    case LawKind::Logarithmic:
    case LawKind::ExponentialDecay:
    case LawKind::ReciprocalFactorial:
      return RarityClass::CaseII;
    case LawKind::PositivePower:
    case LawKind::ExponentialGrow:
    case LawKind::Factorial:
    case LawKind::SuperExponential:
      return RarityClass::CaseI;
  }
  return RarityClass::CaseI;
}

std::size_t WeightLaw::first_index() const noexcept {
  switch (kind_) {
    case LawKind::Logarithmic:
      return 2;
    case LawKind::ExponentialDecay:
      return 0;
    default:
      return 1;
  }
}

double WeightLaw::weight(std::size_t j) const {
  if (j < first_index()) {
    throw DomainError("index " + std::to_string(j) + " precedes the first index of " + spec());
  }
  const double x = static_cast<double>(j);
  switch (kind_) {
    case LawKind::Uniform:
      return 1.0;
    case LawKind::PositivePower:
      return std::pow(x, param_);
    case LawKind::Zipf:
      return std::pow(x, -param_);
    case LawKind::Logarithmic:
      return std::pow(std::log(x), -param_);
    case LawKind::ExponentialGrow:
      return std::exp(param_ * x);
    case LawKind::ExponentialDecay:
      return std::exp(-param_ * x);
    case LawKind::Factorial:
    case LawKind::ReciprocalFactorial: {
      double f = 1.0;
      for (std::size_t i = 2; i <= j; ++i) f *= static_cast<double>(i);
      return kind_ == LawKind::Factorial ? f : 1.0 / f;
    }
    case LawKind::SuperExponential:
      return std::exp(x * param_ * std::log1p(x));
  }
  return 0.0;
}

std::size_t WeightLaw::max_size() const {
  switch (kind_) {
    case LawKind::Uniform:
    case LawKind::Logarithmic:
      return kUnbounded;
    case LawKind::PositivePower:
      // The partial sum grows like M^{r+1}.
      return size_from_log_bound(kMaxExponent / (param_ + 1.0));
    case LawKind::Zipf:
      return size_from_log_bound(kMaxExponent / param_);
    case LawKind::ExponentialGrow:
      return static_cast<std::size_t>(std::floor(kMaxExponent / param_));
    case LawKind::ExponentialDecay:
      return static_cast<std::size_t>(std::floor(kMaxExponent / param_)) + 1;
    case LawKind::Factorial:
    case LawKind::ReciprocalFactorial:
      return kMaxFactorialIndex;
    case LawKind::SuperExponential: {
      std::size_t m = 0;
      while (static_cast<double>(m + 1) * param_ * std::log1p(static_cast<double>(m + 1)) <=
             kMaxExponent) {
        ++m;
      }
      return m;
    }
  }
  return 0;
}

std::string WeightLaw::spec() const {
  switch (kind_) {
    case LawKind::Uniform:
      return "uniform";
    case LawKind::PositivePower:
      return "power:r=" + format_param(param_);
    case LawKind::Zipf:
      return "zipf:p=" + format_param(param_);
    case LawKind::Logarithmic:
      return "log:r=" + format_param(param_);
    case LawKind::ExponentialGrow:
      return "expgrow:p=" + format_param(param_);
    case LawKind::ExponentialDecay:
      return "expdecay:p=" + format_param(param_);
    case LawKind::Factorial:
      return "factorial";
    case LawKind::ReciprocalFactorial:
      return "recipfactorial";
    case LawKind::SuperExponential:
      return "superexp:c=" + format_param(param_);
  }
  return "?";
}

std::vector<double> generate_weights(const WeightLaw& law, std::size_t size) {
  if (size == 0) throw DomainError("family size M must be at least 1");
  const std::size_t limit = law.max_size();
  if (size > limit) {
    throw RangeError(law.spec() + " overflows double precision at M = " + std::to_string(size) +
                         "; largest representable M is " + std::to_string(limit),
                     limit);
  }
  std::vector<double> out;
  out.reserve(size);
  const std::size_t first = law.first_index();
  if (law.kind() == LawKind::Factorial || law.kind() == LawKind::ReciprocalFactorial) {
    double f = 1.0;
    for (std::size_t j = 2; j < first; ++j) f *= static_cast<double>(j);
    for (std::size_t j = first; j < first + size; ++j) {
      if (j >= 2) f *= static_cast<double>(j);
      out.push_back(law.kind() == LawKind::Factorial ? f : 1.0 / f);
    }
  } else {
    for (std::size_t j = first; j < first + size; ++j) out.push_back(law.weight(j));
  }
  for (double w : out) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw RangeError(law.spec() + " produced a non-positive or non-finite weight at M = " +
                           std::to_string(size),
                       limit);
    }
  }
  return out;
}

double partial_sum(const WeightLaw& law, std::size_t size) {
  const auto weights = generate_weights(law, size);
  const double total = compensated_sum(weights);
  if (!std::isfinite(total)) {
    throw RangeError("partial sum of " + law.spec() + " overflows at M = " + std::to_string(size),
                     law.max_size());
  }
  return total;
}

std::string InterlacedFamily::spec() const {
  std::string out;
  for (std::size_t s = 0; s < subfamilies.size(); ++s) {
    if (s) out += '+';
    out += subfamilies[s].spec();
  }
  return out;
}

std::optional<std::size_t> unique_case_two(std::span<const WeightLaw> laws) {
  std::optional<std::size_t> found;
  for (std::size_t s = 0; s < laws.size(); ++s) {
    if (laws[s].rarity_class() != RarityClass::CaseII) continue;
    if (found) return std::nullopt;
    found = s;
  }
  return found;
}

CouponDistribution normalize(std::span<const double> weights) {
  if (weights.empty()) throw DomainError("a coupon distribution needs at least one coupon");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DomainError("coupon weights must be positive and finite");
    }
  }
  CouponDistribution dist;
  dist.weights.assign(weights.begin(), weights.end());
  dist.weight_total = compensated_sum(weights);
  if (!std::isfinite(dist.weight_total)) {
    throw RangeError("total weight overflows double precision", 0);
  }
  dist.subfamily_totals = {dist.weight_total};
  dist.probs.reserve(weights.size());
  for (double w : weights) dist.probs.push_back(w / dist.weight_total);
  return dist;
}

CouponDistribution interlace(const InterlacedFamily& family) {
  const std::size_t k = family.k();
  const std::size_t size = family.per_family_size;
  if (k == 0) throw DomainError("an interlaced family needs at least one subfamily");
  if (size == 0) throw DomainError("family size M must be at least 1");

  std::vector<double> weights(k * size);
  std::vector<double> totals;
  totals.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    const auto sub = generate_weights(family.subfamilies[s], size);
    for (std::size_t j = 0; j < size; ++j) weights[j * k + s] = sub[j];
    totals.push_back(compensated_sum(sub));
  }

  CouponDistribution dist;
  dist.weight_total = compensated_sum(totals);
  if (!std::isfinite(dist.weight_total)) {
    throw RangeError("total weight of " + family.spec() + " overflows at M = " +
                         std::to_string(size),
                     0);
  }
  dist.probs.reserve(weights.size());
  for (double w : weights) dist.probs.push_back(w / dist.weight_total);
  dist.weights = std::move(weights);
  dist.subfamily_totals = std::move(totals);
  return dist;
}

CouponDistribution subfamily_distribution(const InterlacedFamily& family, std::size_t index) {
  if (index >= family.k()) {
    throw DomainError("subfamily index " + std::to_string(index) + " out of range for " +
                      std::to_string(family.k()) + " subfamilies");
  }
  const auto weights = generate_weights(family.subfamilies[index], family.per_family_size);
  return normalize(weights);
}

}  // namespace dixie
