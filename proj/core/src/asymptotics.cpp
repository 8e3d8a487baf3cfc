#include "dixie/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dixie/errors.hpp"
#include "dixie/special.hpp"
#include "format.hpp"

namespace dixie {
namespace {

using detail::shortest;

// Reference size at which subfamily sums are ranked for dominance.
constexpr double kDominanceSize = 1e6;

LeadingTerm growth(std::function<double(double)> log_value, std::string description,
                   std::string row) {
  LeadingTerm t;
  t.log_value = std::move(log_value);
  t.description = std::move(description);
  t.source_row = std::move(row);
  return t;
}

LeadingTerm limit(double value, std::string description, std::string row) {
  LeadingTerm t = growth([lv = std::log(value)](double) { return lv; }, std::move(description),
                         std::move(row));
  t.kind = TermKind::Constant;
  return t;
}

LeadingTerm unknown_constant(std::string row) {
  LeadingTerm t = limit(1.0, "constant", std::move(row));
  t.constant_unknown = true;
  return t;
}

std::string row_name(const WeightLaw& law) {
  switch (law.kind()) {
    case LawKind::Uniform:
      return "uniform";
    case LawKind::PositivePower:
      return "positive power law";
    case LawKind::Zipf:
      if (law.param() < 1.0) return "Zipf law 0<p<1";
      if (law.param() == 1.0) return "std Zipf p=1";
      return "Zipf law p>1";
    case LawKind::Logarithmic:
      return "logarithmic";
    case LawKind::ExponentialGrow:
      return "exponential e^{pj}";
    case LawKind::ExponentialDecay:
      return "exponential e^{-pj}";
    case LawKind::Factorial:
      return "factorial";
    case LawKind::ReciprocalFactorial:
      return "reciprocal factorial";
    case LawKind::SuperExponential:
      return "super exponential";
  }
  return "?";
}

}  // namespace

double LeadingTerm::value_at(double size) const { return std::exp(log_value(size)); }

LeadingTerm leading_sum(const WeightLaw& law) {
  const double a = law.param();
  const std::string row = row_name(law);
  switch (law.kind()) {
    case LawKind::Uniform:
      return growth([](double m) { return std::log(m); }, "M", row);
    case LawKind::PositivePower:
      return growth([a](double m) { return (a + 1.0) * std::log(m) - std::log(a + 1.0); },
                    "M^" + shortest(a + 1.0) + "/" + shortest(a + 1.0), row);
    case LawKind::Zipf:
      if (a < 1.0) {
        return growth([a](double m) { return (1.0 - a) * std::log(m) - std::log(1.0 - a); },
                      "M^" + shortest(1.0 - a) + "/" + shortest(1.0 - a), row);
      }
      if (a == 1.0) return growth([](double m) { return std::log(std::log(m)); }, "ln M", row);
      return limit(zeta(a), "zeta(" + shortest(a) + ")", row);
    case LawKind::Logarithmic:
      return growth([a](double m) { return std::log(m) - a * std::log(std::log(m)); },
                    "M/(ln M)^" + shortest(a), row);
    case LawKind::ExponentialGrow:
      return growth([a](double m) { return a * (m + 1.0) - std::log(std::expm1(a)); },
                    "e^{" + shortest(a) + "(M+1)}/(e^" + shortest(a) + "-1)", row);
    case LawKind::ExponentialDecay:
      return limit(-1.0 / std::expm1(-a), "1/(1-e^-" + shortest(a) + ")", row);
    case LawKind::Factorial:
      return growth([](double m) { return std::lgamma(m + 1.0); }, "M!", row);
    case LawKind::ReciprocalFactorial:
      return limit(std::numbers::e - 1.0, "e-1", row);
    case LawKind::SuperExponential:
      return growth([a](double m) { return m * a * std::log1p(m); },
                    "e^{M c_M}, c_M=" + shortest(a) + " ln(M+1)", row);
  }
  throw DomainError("unknown law");
}

LeadingTerm leading_l1(const WeightLaw& law) {
  const double a = law.param();
  const std::string row = row_name(law);
  if (law.rarity_class() == RarityClass::CaseI) return unknown_constant(row);
  switch (law.kind()) {
    case LawKind::Uniform:
      return growth([](double m) { return std::log(std::log(m)); }, "ln M", row);
    case LawKind::Zipf:
      return growth([a](double m) { return a * std::log(m) + std::log(std::log(m)); },
                    a == 1.0 ? "M ln M" : "M^" + shortest(a) + " ln M", row);
    case LawKind::Logarithmic:
      return growth([a](double m) { return (a + 1.0) * std::log(std::log(m)); },
                    "(ln M)^" + shortest(a + 1.0), row);
    case LawKind::ExponentialDecay: {
      LeadingTerm t = growth([a](double m) { return a * m; }, "C e^{" + shortest(a) + " M}", row);
      t.constant_unknown = true;
      return t;
    }
    case LawKind::ReciprocalFactorial: {
      LeadingTerm t = growth([](double m) { return std::lgamma(m + 1.0); }, "C1 M!", row);
      t.constant_unknown = true;
      return t;
    }
    default:
      break;
  }
  throw DomainError("no L1 leading term for " + law.spec());
}

LeadingTerm leading_expectation(const InterlacedFamily& family, unsigned m) {
  if (m < 1) throw DomainError("number of sets m must be at least 1");
  if (family.k() == 0) throw DomainError("an interlaced family needs at least one subfamily");
  const auto rare = family.rare_index ? family.rare_index : unique_case_two(family.subfamilies);
  if (!rare) {
    throw DomainError("rare subfamily is ambiguous for " + family.spec() +
                      "; set the rare index explicitly");
  }
  if (*rare >= family.k()) throw DomainError("rare subfamily index out of range");
  const WeightLaw& rare_law = family.subfamilies[*rare];
  if (rare_law.rarity_class() != RarityClass::CaseII) {
    throw HypothesisError("rare subfamily " + rare_law.spec() + " is a Case I law");
  }

  std::vector<LeadingTerm> sums;
  for (const auto& law : family.subfamilies) sums.push_back(leading_sum(law));
  const auto dominant = std::max_element(sums.begin(), sums.end(), [](const auto& x, const auto& y) {
    return x.log_value(kDominanceSize) < y.log_value(kDominanceSize);
  });
  LeadingTerm l1 = leading_l1(rare_law);

  // A uniform companion is admissible; any other decaying non-rare law is not.
  bool decaying_companion = false;
  for (std::size_t s = 0; s < family.k(); ++s) {
    const WeightLaw& law = family.subfamilies[s];
    if (s != *rare && law.rarity_class() == RarityClass::CaseII && law.kind() != LawKind::Uniform) {
      decaying_companion = true;
    }
  }

  LeadingTerm out;
  out.log_value = [sum = dominant->log_value, l = l1.log_value](double size) {
    return sum(size) + l(size);
  };
  out.description = "(" + dominant->description + ") * (" + l1.description + ")";
  out.source_row = dominant->source_row + " x " + l1.source_row;
  out.constant_unknown = l1.constant_unknown;
  out.outside_hypothesis = decaying_companion;
  return out;
}

double DecayFunction::f(double x) const { return std::exp(log_f(x)); }

DecayFunction DecayFunction::power(double p) {
  if (!(p > 0.0)) throw DomainError("power decay function needs p > 0");
  return {[p](double x) { return p * std::log(x); },
          [p](double x) { return p / x; },
          [p](double x) { return p * (p - 1.0) / (x * x); },
          [p](double x) { return p * (p - 1.0) * (p - 2.0) / (x * x * x); },
          0.0,
          "x^" + shortest(p)};
}

DecayFunction DecayFunction::log_power(double r) {
  if (!(r > 0.0)) throw DomainError("log-power decay function needs r > 0");
  return {[r](double x) { return r * std::log(std::log(x)); },
          [r](double x) { return r / (x * std::log(x)); },
          [r](double x) {
            const double l = std::log(x);
            return (r * (r - 1.0) / (l * l) - r / l) / (x * x);
          },
          [r](double x) {
            const double l = std::log(x);
            return (r * (r - 1.0) * (r - 2.0) / (l * l * l) - 3.0 * r * (r - 1.0) / (l * l) +
                    2.0 * r / l) /
                   (x * x * x);
          },
          1.0,
          "(ln x)^" + shortest(r)};
}

DecayFunction DecayFunction::exponential(double p) {
  if (!(p > 0.0)) throw DomainError("exponential decay function needs p > 0");
  return {[p](double x) { return p * x; }, [p](double) { return p; },
          [p](double) { return p * p; },   [p](double) { return p * p * p; },
          -std::numeric_limits<double>::infinity(), "e^{" + shortest(p) + " x}"};
}

DecayFunction DecayFunction::stretched_exponential(double s) {
  if (!(s > 0.0)) throw DomainError("stretched exponential needs s > 0");
  // With u = (x^s)' the derivatives of e^{x^s} are e^{x^s} times u, u^2 + u', u^3 + 3uu' + u''.
  const auto u = [s](double x) { return s * std::pow(x, s - 1.0); };
  const auto du = [s](double x) { return s * (s - 1.0) * std::pow(x, s - 2.0); };
  const auto ddu = [s](double x) { return s * (s - 1.0) * (s - 2.0) * std::pow(x, s - 3.0); };
  return {[s](double x) { return std::pow(x, s); },
          u,
          [u, du](double x) { return u(x) * u(x) + du(x); },
          [u, du, ddu](double x) {
            const double v = u(x);
            return v * v * v + 3.0 * v * du(x) + ddu(x);
          },
          0.0,
          "e^{x^" + shortest(s) + "}"};
}

DecayFunction DecayFunction::for_law(const WeightLaw& law) {
  switch (law.kind()) {
    case LawKind::Zipf:
      return power(law.param());
    case LawKind::Logarithmic:
      return log_power(law.param());
    case LawKind::ExponentialDecay:
      return exponential(law.param());
    default:
      throw DomainError(law.spec() + " is not of the form d_j = 1/f(j) with increasing f");
  }
}

double decay_l1_leading(const DecayFunction& f, double size) {
  if (!(size > f.x_min)) throw DomainError("decay_l1_leading: M outside the domain of f");
  return f.f(size) * -std::log(f.d1_over_f(size));
}

ConditionReport check_conditions(const DecayFunction& f, std::span<const double> xs,
                                 double growth_factor) {
  if (xs.size() < 2) throw DomainError("check_conditions needs at least two grid points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > f.x_min)) {
      throw DomainError("grid point " + shortest(xs[i]) + " outside the domain of " +
                        f.description);
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) throw DomainError("grid must be strictly increasing");
  }

  ConditionReport report;
  for (double x : xs) {
    ConditionSample s;
    s.x = x;
    s.f = f.f(x);
    const double u1 = f.d1_over_f(x);
    s.log_derivative = u1;
    s.curvature = f.d2_over_f(x) / (u1 * u1);
    s.third_order = f.d3_over_f(x) / (u1 * u1 * u1);
    report.samples.push_back(s);
  }

  const auto& samples = report.samples;
  report.growing = true;
  report.log_derivative_vanishing = true;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(f.log_f(samples[i].x) > f.log_f(samples[i - 1].x))) report.growing = false;
    if (!(samples[i].log_derivative < samples[i - 1].log_derivative)) {
      report.log_derivative_vanishing = false;
    }
  }

  const std::size_t half = samples.size() / 2;
  const auto bounded = [&](auto field, double& max_out) {
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double v = std::abs(samples[i].*field);
      if (!std::isfinite(v)) return false;
      max_out = std::max(max_out, v);
      (i < half ? lower : upper) = std::max(i < half ? lower : upper, v);
    }
    return upper <= growth_factor * std::max(lower, 1.0);
  };
  report.curvature_bounded = bounded(&ConditionSample::curvature, report.curvature_max);
  report.third_order_bounded = bounded(&ConditionSample::third_order, report.third_order_max);
  return report;
}

}  // namespace dixie
