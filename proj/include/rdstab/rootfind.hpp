#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace rdstab {

// Bisection on a bracketing interval [lo, hi] with h(lo)*h(hi) <= 0.
// Stops when the interval shrinks below xtol_abs + xtol_rel*|mid|.
// Throws RootError if the interval does not bracket a sign change.
double bisect(const std::function<double(double)>& h, double lo, double hi,
              double xtol_abs, double xtol_rel);

// Scans (lo, hi) with n uniform interior points and returns every adjacent
// pair with a sign change (or an exact zero hit). Endpoints are excluded.
std::vector<std::pair<double, double>> scan_brackets(
    const std::function<double(double)>& h, double lo, double hi, int n);

}  // namespace rdstab
