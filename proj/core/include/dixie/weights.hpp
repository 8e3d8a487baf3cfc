#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dixie {

enum class LawKind {
  Uniform,
  PositivePower,        // j^r
  Zipf,                 // j^-p
  Logarithmic,          // (ln j)^-r, j >= 2
  ExponentialGrow,      // e^{p j}
  ExponentialDecay,     // e^{-p j}, j >= 0
  Factorial,            // j!
  ReciprocalFactorial,  // 1/j!
  SuperExponential,     // e^{j c ln(j+1)}
};

// Convergence class of sum_j exp(-l_j xi). Case II laws can play the rare role.
enum class RarityClass { CaseI, CaseII };

/// A named weight sequence l_j drawn from a fixed catalogue.
///
/// Every law has a first index: 1 for most laws, 2 for Logarithmic (ln 1 = 0)
/// and 0 for ExponentialDecay. A law "of size M" always means M consecutive
/// weights starting at that index.
class WeightLaw {
 public:
  static WeightLaw uniform();
  static WeightLaw power(double r);
  static WeightLaw zipf(double p);
  static WeightLaw logarithmic(double r);
  static WeightLaw exp_grow(double p);
  static WeightLaw exp_decay(double p);
  static WeightLaw factorial();
  static WeightLaw reciprocal_factorial();
  static WeightLaw super_exponential(double c);

  LawKind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  bool has_param() const noexcept;

  RarityClass rarity_class() const noexcept;
  std::size_t first_index() const noexcept;

  // l_j at absolute index j (j >= first_index()). May overflow to inf.
  double weight(std::size_t j) const;

  // Largest M whose weights (and their sum) stay finite and positive.
  std::size_t max_size() const;

  // Canonical mini-grammar form, e.g. "zipf:p=1".
  std::string spec() const;

  bool operator==(const WeightLaw&) const = default;

 private:
  WeightLaw(LawKind kind, double param) : kind_(kind), param_(param) {}

  LawKind kind_;
  double param_;
};

// Parses `uniform`, `power:r=<f>`, `zipf:p=<f>`, `log:r=<f>`, `expgrow:p=<f>`,
// `expdecay:p=<f>`, `factorial`, `recipfactorial`, `superexp:c=<f>`.
// Throws ParseError naming the offending token.
WeightLaw parse_law(std::string_view text);

std::vector<double> generate_weights(const WeightLaw& law, std::size_t size);
double partial_sum(const WeightLaw& law, std::size_t size);

/// k weight laws interlaced position by position: subfamily s of k occupies
/// positions s, s+k, s+2k, ... so the full sequence has N = k*M coupons.
struct InterlacedFamily {
  std::vector<WeightLaw> subfamilies;
  std::size_t per_family_size = 0;
  std::optional<std::size_t> rare_index;

  std::size_t k() const noexcept { return subfamilies.size(); }
  std::size_t total_size() const noexcept { return subfamilies.size() * per_family_size; }

  // Subfamily specs joined with '+', e.g. "uniform+zipf:p=1".
  std::string spec() const;
};

// Index of the unique Case II subfamily, or nullopt when there are none or several.
std::optional<std::size_t> unique_case_two(std::span<const WeightLaw> laws);

struct CouponDistribution {
  std::vector<double> probs;
  std::vector<double> weights;           // raw a_j, same layout as probs
  double weight_total = 0.0;             // A_N
  std::vector<double> subfamily_totals;  // B_M, D_M, ... in subfamily order

  std::size_t size() const noexcept { return probs.size(); }
};

// Single-family distribution from raw positive weights.
CouponDistribution normalize(std::span<const double> weights);

CouponDistribution interlace(const InterlacedFamily& family);
CouponDistribution subfamily_distribution(const InterlacedFamily& family, std::size_t index);

}  // namespace dixie
