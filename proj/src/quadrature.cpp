#include "rdstab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "rdstab/errors.hpp"

namespace rdstab {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
    0.7966664774136267, 0.9602898564975363};
constexpr double kWeights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

double composite(const std::function<double(double)>& fn, double a, double b,
                 int panels) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double acc = 0.0;
    for (int q = 0; q < 8; ++q) {
      acc += kWeights[q] * fn(mid + 0.5 * h * kNodes[q]);
    }
    total += 0.5 * h * acc;
  }
  return total;
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b,
                 int init_panels, double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  int panels = init_panels < 1 ? 1 : init_panels;
  double prev = composite(fn, a, b, panels);
  for (panels *= 2; panels <= (1 << 14); panels *= 2) {
    const double cur = composite(fn, a, b, panels);
    if (!std::isfinite(cur)) {
      throw NonFiniteError("quadrature accumulated a non-finite value");
    }
    const double gate =
        std::max(rel_tol * std::max(std::fabs(cur), 1e-30), abs_tol);
    if (std::fabs(cur - prev) <= gate) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace rdstab
