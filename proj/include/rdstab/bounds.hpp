#pragma once

#include <utility>

#include "rdstab/model.hpp"

namespace rdstab {

// Multiplied-out reaction pieces f(u)phi(u) = K - u*Psi(u) and
// g(u)phi(u) = u*Phi_fn(u), with extrema of Psi and Phi_fn over a scan range.
// psi_positive records whether Psi stayed positive on the whole range; when it
// does not (the decomposition premise fails), the extrema cover only the
// sub-range where Psi > 0 and downstream bounds carry valid = false.
struct Decomposition {
  double K = 0.0;
  ScalarFn Psi;
  ScalarFn Phi_fn;
  double psi_min = 0.0;
  double psi_max = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  std::pair<double, double> scan_range{0.0, 0.0};
  bool psi_positive = true;
};

// Populates extrema for a user-supplied decomposition by dense scan (1e5
// points) with golden-section refinement around the best bracket.
Decomposition make_decomposition(double K, ScalarFn Psi, ScalarFn Phi_fn,
                                 double scan_hi);

// f*phi = a - mu*u  =>  K = a, Psi = mu; g*phi = u  =>  Phi = 1.
Decomposition decompose_lengyel_epstein(double a, double mu, double scan_hi);

// f*phi = f  =>  K = stim, Psi(u) = u^2 - (1+beta)u + beta (sign-indefinite);
// g*phi = u/gamma  =>  Phi = 1/gamma.
Decomposition decompose_fitzhugh_nagumo(double beta, double gamma, double stim,
                                        double scan_hi);

struct BoundsReport {
  double delta = 0.0;    // rectangle (0, delta) x (0, g_delta)
  double g_delta = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double C1 = 0.0;       // min(u1, v1)
  double C2 = 0.0;       // min(u2, v2)
  double C2_box = 0.0;   // max(u2, v2); the bounding box uses this corner
  double phi_prime_0 = 0.0;
  bool valid = true;     // false when the decomposition premise failed
};

// True iff the reaction field points inward on the boundary of
// (0, delta) x (0, g(delta)), sampled with n_samples points per edge.
bool check_invariant_rectangle(const ModelSpec& spec, int n_samples);

// Solution bounds u1 <= u <= u2, v1 <= v <= v2 from the decomposition and the
// initial-data ranges. Throws SublinearityError if phi(s)/s increases on the
// scan grid and DomainError if phi'(0) <= 0.
BoundsReport compute_bounds(const ModelSpec& spec, const Decomposition& dec,
                            std::pair<double, double> u0_range,
                            std::pair<double, double> v0_range);

}  // namespace rdstab
