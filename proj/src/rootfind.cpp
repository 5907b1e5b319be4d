#include "rdstab/rootfind.hpp"

#include <cmath>

#include "rdstab/errors.hpp"

namespace rdstab {

double bisect(const std::function<double(double)>& h, double lo, double hi,
              double xtol_abs, double xtol_rel) {
  double flo = h(lo);
  double fhi = h(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) {
    throw NonFiniteError("bisect: non-finite value at bracket endpoint");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw RootError("bisect: interval does not bracket a sign change");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= xtol_abs + xtol_rel * std::fabs(mid)) return mid;
    const double fmid = h(mid);
    if (!std::isfinite(fmid)) {
      throw NonFiniteError("bisect: non-finite value at midpoint");
    }
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::pair<double, double>> scan_brackets(
    const std::function<double(double)>& h, double lo, double hi, int n) {
  std::vector<std::pair<double, double>> brackets;
  double prev_u = 0.0;
  double prev_h = 0.0;
  bool have_prev = false;
  for (int k = 1; k <= n; ++k) {
    const double u = lo + (hi - lo) * static_cast<double>(k) /
                              static_cast<double>(n + 1);
    const double hu = h(u);
    if (!std::isfinite(hu)) {
      throw NonFiniteError("scan_brackets: non-finite value in scan");
    }
    // A zero hit counts once: it was already recorded when first seen.
    if (have_prev && prev_h != 0.0 &&
        (hu == 0.0 || (prev_h > 0.0) != (hu > 0.0))) {
      brackets.emplace_back(prev_u, u);
    }
    prev_u = u;
    prev_h = hu;
    have_prev = true;
  }
  return brackets;
}

}  // namespace rdstab
