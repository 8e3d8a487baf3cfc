#include <cmath>
#include <string>
#include <vector>

#include "dixie/errors.hpp"
#include "dixie/numeric.hpp"
#include "dixie/quadrature.hpp"

namespace dixie {

double markov_oracle(const CouponDistribution& dist, CollectorQuery query, double max_states) {
  if (query.m < 1) throw DomainError("number of sets m must be at least 1");
  if (query.r != 1 && query.r != 2) {
    throw DomainError("markov_oracle supports r = 1 or r = 2, got " + std::to_string(query.r));
  }
  const std::size_t n = dist.size();
  if (n == 0) throw DomainError("empty distribution");
  const unsigned m = query.m;
  const double radix = static_cast<double>(m) + 1.0;
  const double states = std::pow(radix, static_cast<double>(n));
  if (states > max_states) throw StateSpaceError(states, max_states);

  const auto total = static_cast<std::size_t>(states);
  std::vector<std::size_t> stride(n);
  stride[0] = 1;
  for (std::size_t j = 1; j < n; ++j) stride[j] = stride[j - 1] * (m + 1);

  // expected[s] = E[remaining draws | s], rising[s] = E[R (R + 1) | s].
  // A draw of type j moves s to s + stride[j] unless type j is already
  // complete, so states only ever move to larger indices.
  std::vector<double> expected(total, 0.0);
  std::vector<double> rising(query.r == 2 ? total : 0, 0.0);
  std::vector<unsigned> digits(n);
  for (std::size_t s = total; s-- > 0;) {
    std::size_t rest = s;
    for (std::size_t j = 0; j < n; ++j) {
      digits[j] = static_cast<unsigned>(rest % (m + 1));
      rest /= (m + 1);
    }
    CompensatedSum active;
    CompensatedSum complete;
    CompensatedSum next_expected;
    for (std::size_t j = 0; j < n; ++j) {
      if (digits[j] == m) {
        complete.add(dist.probs[j]);
        continue;
      }
      active.add(dist.probs[j]);
      next_expected.add(dist.probs[j] * expected[s + stride[j]]);
    }
    const double move = active.value();
    if (move == 0.0) continue;  // absorbing
    const double stay = complete.value();
    expected[s] = (1.0 + next_expected.value()) / move;
    if (query.r == 2) {
      // R = 1 + R' gives (1 + R')(2 + R') = R'(R' + 1) + 2R' + 2.
      CompensatedSum next_rising;
      next_rising.add(2.0);
      next_rising.add(2.0 * stay * expected[s]);
      for (std::size_t j = 0; j < n; ++j) {
        if (digits[j] == m) continue;
        const std::size_t t = s + stride[j];
        next_rising.add(dist.probs[j] * (rising[t] + 2.0 * expected[t]));
      }
      rising[s] = next_rising.value() / move;
    }
  }
  return query.r == 1 ? expected[0] : rising[0];
}

}  // namespace dixie
