#pragma once

#include <functional>

namespace rdstab {

// Composite 8-point Gauss-Legendre quadrature of fn over [a, b] with
// init_panels panels, doubling the panel count until two successive values
// agree to rel_tol (relative to max(|I|, 1e-30)) or to abs_tol. Panel count
// caps at 2^14. abs_tol is the caller's roundoff floor for integrands whose
// evaluation noise the relative test cannot see (cancellation inside fn);
// zero disables it.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 int init_panels, double rel_tol, double abs_tol = 0.0);

}  // namespace rdstab
