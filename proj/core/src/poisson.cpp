#include "dixie/poisson.hpp"

#include <cmath>
#include <limits>

#include "dixie/errors.hpp"

namespace dixie {
namespace {

constexpr double kSeriesCutoff = 1e-18;
constexpr int kMaxSeriesTerms = 100000;

}  // namespace

PoissonTail::PoissonTail(unsigned m) : m_(m), log_factorial_(m + 1, 0.0) {
  if (m == 0) throw DomainError("number of sets m must be at least 1");
  for (unsigned i = 2; i <= m; ++i) {
    log_factorial_[i] = log_factorial_[i - 1] + std::log(static_cast<double>(i));
  }
}

double PoissonTail::log_series_tail(double x) const {
  // sum_{k>=0} x^k m!/(m+k)!, leading term factored out.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    term *= x / static_cast<double>(m_ + static_cast<unsigned>(k));
    sum += term;
    if (term < kSeriesCutoff * sum) break;
  }
  return static_cast<double>(m_) * std::log(x) - x - log_factorial_[m_] + std::log(sum);
}

double PoissonTail::direct_head(double x) const {
  // Terms x^i/i! e^{-x} grow with i for x > m, so start from the largest and
  // walk down: t_{i-1} = t_i * i / x.
  const unsigned top = m_ - 1;
  const double log_top = static_cast<double>(top) * std::log(x) - x - log_factorial_[top];
  double term = std::exp(log_top);
  if (term == 0.0) return 0.0;
  double sum = 0.0;
  for (unsigned i = top + 1; i-- > 0;) {
    sum += term;
    term *= static_cast<double>(i) / x;
  }
  return sum;
}

double PoissonTail::log_tail(double x) const {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x < static_cast<double>(m_) + 1.0) return log_series_tail(x);
  const double head = direct_head(x);
  return head < 1e-4 ? std::log1p(-head) : std::log(1.0 - head);
}

double PoissonTail::tail(double x) const {
  if (x <= 0.0) return 0.0;
  if (x < static_cast<double>(m_) + 1.0) return std::exp(log_series_tail(x));
  return 1.0 - direct_head(x);
}

double PoissonTail::head(double x) const {
  if (x <= 0.0) return 1.0;
  if (x < static_cast<double>(m_) + 1.0) return -std::expm1(log_series_tail(x));
  return direct_head(x);
}

double PoissonTail::log_head(double x) const {
  if (x <= 0.0) return 0.0;
  if (x < static_cast<double>(m_) + 1.0) return std::log(-std::expm1(log_series_tail(x)));
  const unsigned top = m_ - 1;
  const double log_top = static_cast<double>(top) * std::log(x) - x - log_factorial_[top];
  double term = 1.0;
  double sum = 0.0;
  for (unsigned i = top + 1; i-- > 0;) {
    sum += term;
    term *= static_cast<double>(i) / x;
  }
  return log_top + std::log(sum);
}

double poisson_tail(unsigned m, double x) {
  if (!(x >= 0.0)) throw DomainError("poisson_tail requires x >= 0");
  return PoissonTail(m).tail(x);
}

double poisson_head(unsigned m, double x) {
  if (!(x >= 0.0)) throw DomainError("poisson_head requires x >= 0");
  return PoissonTail(m).head(x);
}

}  // namespace dixie
