#include "dixie/special.hpp"

#include <cmath>

#include "dixie/errors.hpp"
#include "dixie/numeric.hpp"

namespace dixie {

double harmonic(std::size_t count) {
  if (count < 1) throw DomainError("harmonic(M) requires M >= 1");
  // Smallest terms first.
  CompensatedSum sum;
  for (std::size_t j = count; j >= 1; --j) sum.add(1.0 / static_cast<double>(j));
  return sum.value();
}

double zeta(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("zeta(p) requires finite p > 1");
  constexpr int kCut = 64;
  const double cut = kCut;
  CompensatedSum sum;
  for (int j = kCut - 1; j >= 1; --j) sum.add(std::pow(static_cast<double>(j), -p));
  // sum_{j>=J} j^{-p} = J^{1-p}/(p-1) + J^{-p}/2 + sum_k B_{2k}/(2k)! * (p)_{2k-1} J^{-p-2k+1}
  sum.add(std::pow(cut, 1.0 - p) / (p - 1.0));
  const double lead = std::pow(cut, -p);
  sum.add(0.5 * lead);
  // B_2/2! = 1/12, B_4/4! = -1/720, B_6/6! = 1/30240, B_8/8! = -1/1209600.
  constexpr double kBernoulli[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
  double rising = p;  // p (p+1) ... (p+2k-2)
  double power = lead / cut;
  for (int k = 0; k < 4; ++k) {
    sum.add(kBernoulli[k] * rising * power);
    rising *= (p + 2.0 * k + 1.0) * (p + 2.0 * k + 2.0);
    power /= cut * cut;
  }
  return sum.value();
}

}  // namespace dixie
