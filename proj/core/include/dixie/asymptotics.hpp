#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dixie/weights.hpp"

namespace dixie {

enum class TermKind {
  Growth,    // grows without bound in M
  Constant,  // tends to a finite limit
};

/// Leading term of an asymptotic expansion in the family size M.
///
/// Stored in log form so that exponential and factorial rows can be
/// compared far past the range of double.
struct LeadingTerm {
  std::function<double(double)> log_value;
  std::string description;
  std::string source_row;
  TermKind kind = TermKind::Growth;
  bool constant_unknown = false;    // shape only; the multiplicative constant is not known
  bool outside_hypothesis = false;  // a non-rare subfamily also decays (not uniform)

  double value_at(double size) const;
};

// Leading term of sum_{j} l_j over a law of size M.
LeadingTerm leading_sum(const WeightLaw& law);

// Leading term of L1(M; law). Case I laws yield a Constant marker with unknown constant.
LeadingTerm leading_l1(const WeightLaw& law);

// Leading term of E[T_m] for an interlaced family: the dominant subfamily sum
// times the rare subfamily's L1. Throws HypothesisError for a Case I rare law.
LeadingTerm leading_expectation(const InterlacedFamily& family, unsigned m);

/// f with d_j = 1/f(j), given through analytic log-derivative quotients so that
/// the regularity ratios never overflow even when f does.
struct DecayFunction {
  std::function<double(double)> log_f;
  std::function<double(double)> d1_over_f;  // f'/f
  std::function<double(double)> d2_over_f;  // f''/f
  std::function<double(double)> d3_over_f;  // f'''/f
  double x_min = 0.0;                       // valid for x > x_min
  std::string description;

  double f(double x) const;

  static DecayFunction power(double p);                // x^p
  static DecayFunction log_power(double r);            // (ln x)^r, x > 1
  static DecayFunction exponential(double p);          // e^{p x}
  static DecayFunction stretched_exponential(double s);  // e^{x^s}
  // Zipf -> power, Logarithmic -> log_power, ExponentialDecay -> exponential.
  static DecayFunction for_law(const WeightLaw& law);
};

// f(M) ln(f(M)/f'(M)), the L1 leading term for decay laws of the regular class.
double decay_l1_leading(const DecayFunction& f, double size);

struct ConditionSample {
  double x = 0.0;
  double f = 0.0;
  double log_derivative = 0.0;  // (ii)  f'/f
  double curvature = 0.0;       // (iii) (f''/f') / (f'/f)
  double third_order = 0.0;     // (iv)  f''' f^2 / f'^3
};

struct ConditionReport {
  std::vector<ConditionSample> samples;
  bool growing = false;                  // (i) f strictly increasing over the grid
  bool log_derivative_vanishing = false;  // (ii) f'/f strictly decreasing over the grid
  bool curvature_bounded = false;        // (iii)
  bool third_order_bounded = false;      // (iv)
  double curvature_max = 0.0;            // max |(iii)| over the grid
  double third_order_max = 0.0;          // max |(iv)| over the grid

  bool satisfied() const noexcept {
    return growing && log_derivative_vanishing && curvature_bounded && third_order_bounded;
  }
};

// Evaluates the regularity conditions (i)-(iv) on an increasing grid. A ratio
// counts as bounded when its magnitude over the upper half of the grid stays
// within `growth_factor` times its magnitude over the lower half (floored at 1).
ConditionReport check_conditions(const DecayFunction& f, std::span<const double> xs,
                                 double growth_factor = 2.0);

}  // namespace dixie
