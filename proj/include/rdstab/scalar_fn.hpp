#pragma once

#include <functional>

namespace rdstab {

// A scalar nonlinearity bundled with its analytic derivative. The derivative
// is supplied (not differenced) because the Jacobian and the mode analysis
// need it to full precision.
struct ScalarFn {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;

  double operator()(double u) const { return eval(u); }
};

}  // namespace rdstab
