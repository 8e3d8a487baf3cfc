#include "dixie/gauss_kronrod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "dixie/numeric.hpp"

namespace dixie {
namespace {

// Kronrod abscissae and weights (QUADPACK qk15); odd indices are the Gauss nodes.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kKronrod[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGauss[4] = {0.129484966168869693270611432679082,
                              0.279705391489276667901467771423780,
                              0.381830050505118944950369775488975,
                              0.417959183673469387755102040816327};

struct Piece {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Piece& x, const Piece& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Piece gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  double abs_sum = std::abs(kronrod);
  double fv1[7];
  double fv2[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    fv1[i] = f(center - dx);
    fv2[i] = f(center + dx);
    kronrod += kKronrod[i] * (fv1[i] + fv2[i]);
    abs_sum += kKronrod[i] * (std::abs(fv1[i]) + std::abs(fv2[i]));
    if (i % 2 == 1) gauss += kGauss[i / 2] * (fv1[i] + fv2[i]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrod[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i) {
    asc += kKronrod[i] * (std::abs(fv1[i] - mean) + std::abs(fv2[i] - mean));
  }
  const double value = kronrod * half;
  const double abs_value = abs_sum * std::abs(half);
  asc *= std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_value > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * abs_value, error);
  }
  return {a, b, value, error};
}

}  // namespace

IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     double rel_tol, std::size_t max_intervals,
                                     std::size_t initial_pieces) {
  IntegrationResult out;
  initial_pieces = std::max<std::size_t>(1, initial_pieces);
  std::priority_queue<Piece, std::vector<Piece>, ByError> queue;
  std::vector<Piece> frozen;
  double total = 0.0;
  double total_error = 0.0;
  const double width = (b - a) / static_cast<double>(initial_pieces);
  for (std::size_t i = 0; i < initial_pieces; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = i + 1 == initial_pieces ? b : a + width * static_cast<double>(i + 1);
    Piece p = gauss_kronrod_15(f, lo, hi);
    out.evaluations += 15;
    total += p.value;
    total_error += p.error;
    queue.push(p);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (total_error > rel_tol * std::abs(total) && !queue.empty()) {
    if (queue.size() + frozen.size() >= max_intervals) break;
    const Piece worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b ||
        (worst.b - worst.a) < 100.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Piece left = gauss_kronrod_15(f, worst.a, mid);
    const Piece right = gauss_kronrod_15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum in interval order so drift from the running updates does not leak in.
  std::vector<Piece> pieces = std::move(frozen);
  while (!queue.empty()) {
    pieces.push_back(queue.top());
    queue.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  CompensatedSum value;
  CompensatedSum error;
  for (const auto& p : pieces) {
    value.add(p.value);
    error.add(p.error);
  }
  out.value = value.value();
  out.error = error.value();
  out.intervals = pieces.size();
  out.converged = out.error <= rel_tol * std::abs(out.value);
  return out;
}

}  // namespace dixie
