#include "rdstab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rdstab/errors.hpp"

namespace rdstab {

namespace {

constexpr int kScanPoints = 100000;

// Golden-section minimum of fn on [lo, hi]; assumes a bracket around the
// grid minimizer. Tolerance is relative to the interval position.
double golden_min(const std::function<double(double)>& fn, double lo,
                  double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = fn(c);
  double fd = fn(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::fabs(b));
       ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = fn(d);
    }
  }
  const double mid = 0.5 * (a + b);
  return std::min({fn(mid), fc, fd});
}

struct Extrema {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

// Extrema over the positive-u scan grid, golden-refined around the best grid
// brackets. When restrict_positive is set, only points with fn > 0 count and
// no refinement runs (the premise already failed; grid values suffice).
Extrema scan_extrema(const ScalarFn& fn, double scan_hi, bool restrict_positive,
                     bool* saw_nonpositive) {
  Extrema ext;
  int k_min = -1, k_max = -1;
  std::vector<double> grid(kScanPoints);
  for (int k = 1; k <= kScanPoints; ++k) {
    const double u = scan_hi * static_cast<double>(k) / kScanPoints;
    grid[k - 1] = u;
    const double v = fn(u);
    if (!std::isfinite(v)) {
      throw NonFiniteError("decomposition function non-finite at u = " +
                           std::to_string(u));
    }
    if (v <= 0.0 && saw_nonpositive) *saw_nonpositive = true;
    if (restrict_positive && v <= 0.0) continue;
    if (v < ext.min) { ext.min = v; k_min = k - 1; }
    if (v > ext.max) { ext.max = v; k_max = k - 1; }
  }
  if (k_min < 0) {
    throw DomainError("decomposition function is nowhere positive on scan range");
  }
  if (!restrict_positive) {
    auto bracket = [&](int k) {
      const double lo = grid[std::max(0, k - 1)];
      const double hi = grid[std::min(kScanPoints - 1, k + 1)];
      return std::pair<double, double>{lo, hi};
    };
    const auto [lo_min, hi_min] = bracket(k_min);
    ext.min = std::min(ext.min, golden_min(fn.eval, lo_min, hi_min));
    const auto [lo_max, hi_max] = bracket(k_max);
    ext.max = std::max(
        ext.max, -golden_min([&fn](double u) { return -fn(u); }, lo_max, hi_max));
  }
  return ext;
}

}  // namespace

Decomposition make_decomposition(double K, ScalarFn Psi, ScalarFn Phi_fn,
                                 double scan_hi) {
  if (!(K > 0.0)) throw DomainError("K must be strictly positive");
  if (!(scan_hi > 0.0)) throw DomainError("scan range must be positive");
  Decomposition dec;
  dec.K = K;
  dec.Psi = std::move(Psi);
  dec.Phi_fn = std::move(Phi_fn);
  dec.scan_range = {0.0, scan_hi};

  bool psi_nonpositive = false;
  Extrema pe = scan_extrema(dec.Psi, scan_hi, false, &psi_nonpositive);
  if (psi_nonpositive) {
    dec.psi_positive = false;
    pe = scan_extrema(dec.Psi, scan_hi, true, nullptr);
  }
  dec.psi_min = pe.min;
  dec.psi_max = pe.max;

  const Extrema fe = scan_extrema(dec.Phi_fn, scan_hi, false, nullptr);
  if (!(fe.min > 0.0)) {
    throw DomainError("Phi must be strictly positive on the scan range");
  }
  dec.phi_min = fe.min;
  dec.phi_max = fe.max;
  return dec;
}

Decomposition decompose_lengyel_epstein(double a, double mu, double scan_hi) {
  if (!(a > 0.0) || !(mu > 0.0)) throw DomainError("a and mu must be positive");
  ScalarFn psi{[mu](double) { return mu; }, [](double) { return 0.0; }};
  ScalarFn phi{[](double) { return 1.0; }, [](double) { return 0.0; }};
  return make_decomposition(a, std::move(psi), std::move(phi), scan_hi);
}

Decomposition decompose_fitzhugh_nagumo(double beta, double gamma, double stim,
                                        double scan_hi) {
  if (!(beta > 0.0) || !(gamma > 0.0) || !(stim > 0.0)) {
    throw DomainError("beta, gamma, stim must be positive");
  }
  ScalarFn psi{
      [beta](double u) { return u * u - (1.0 + beta) * u + beta; },
      [beta](double u) { return 2.0 * u - (1.0 + beta); },
  };
  ScalarFn phi{[gamma](double) { return 1.0 / gamma; },
               [](double) { return 0.0; }};
  return make_decomposition(stim, std::move(psi), std::move(phi), scan_hi);
}

bool check_invariant_rectangle(const ModelSpec& spec, int n_samples) {
  if (n_samples < 16) throw DomainError("n_samples must be >= 16");
  const double delta = spec.delta;
  const double g_delta = spec.g(delta);
  const double u_left = 1e-8 * delta;  // stands in for the u -> 0+ limit

  // Two passes: first collect the boundary values to fix the tolerance scale,
  // then compare against 1e-10 * scale.
  std::vector<double> left, right, bottom, top;
  left.reserve(n_samples);
  right.reserve(n_samples);
  bottom.reserve(n_samples);
  top.reserve(n_samples);
  for (int k = 1; k <= n_samples; ++k) {
    const double v = g_delta * static_cast<double>(k) /
                     static_cast<double>(n_samples + 1);
    left.push_back(spec.reaction_u(u_left, v));
    right.push_back(spec.reaction_u(delta, v));
    const double u = delta * static_cast<double>(k) /
                     static_cast<double>(n_samples + 1);
    bottom.push_back(spec.reaction_v(u, 0.0));
    top.push_back(spec.reaction_v(u, g_delta));
  }
  double scale = 1.0;
  for (const auto* edge : {&left, &right, &bottom, &top}) {
    for (double w : *edge) {
      if (!std::isfinite(w)) {
        throw NonFiniteError("reaction field non-finite on rectangle boundary");
      }
      scale = std::max(scale, std::fabs(w));
    }
  }
  const double tol = 1e-10 * scale;
  for (double w : left) {
    if (w < -tol) return false;   // inflow required on u = 0+
  }
  for (double w : right) {
    if (w > tol) return false;    // no outflow through u = delta
  }
  for (double w : bottom) {
    if (w < -tol) return false;
  }
  for (double w : top) {
    if (w > tol) return false;
  }
  return true;
}

BoundsReport compute_bounds(const ModelSpec& spec, const Decomposition& dec,
                            std::pair<double, double> u0_range,
                            std::pair<double, double> v0_range) {
  if (!(u0_range.first > 0.0) || !(u0_range.second >= u0_range.first)) {
    throw DomainError("u0 range must satisfy 0 < min <= max");
  }
  if (!(v0_range.first > 0.0) || !(v0_range.second >= v0_range.first)) {
    throw DomainError("v0 range must satisfy 0 < min <= max");
  }
  const double phip0 = spec.phi.deriv(0.0);
  if (!(phip0 > 0.0)) {
    throw DomainError("phi'(0) must be strictly positive for these bounds");
  }
  // Sublinearity: phi(s)/s non-increasing on the scan grid.
  {
    const double hi = dec.scan_range.second;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 512; ++k) {
      const double s = hi * static_cast<double>(k) / 512.0;
      const double ratio = spec.phi(s) / s;
      if (ratio > prev + 1e-12 * std::max(1.0, std::fabs(prev))) {
        throw SublinearityError("phi(s)/s increases at s = " +
                                std::to_string(s));
      }
      prev = ratio;
    }
  }

  BoundsReport rep;
  rep.delta = spec.delta;
  rep.g_delta = spec.g(spec.delta);
  rep.phi_prime_0 = phip0;
  rep.valid = dec.psi_positive;

  rep.u2 = std::max(dec.K / dec.psi_max, u0_range.second);
  rep.v2 = std::max(rep.u2 / spec.phi(rep.u2) * dec.phi_max, v0_range.second);
  const double denom = dec.psi_min + spec.lambda * rep.v2 * phip0;
  if (!(denom > 0.0)) {
    throw DomainError("lower-bound denominator is not positive");
  }
  rep.u1 = std::min(dec.K / denom, u0_range.first);
  rep.v1 = std::min(dec.phi_min / phip0, v0_range.first);
  rep.C1 = std::min(rep.u1, rep.v1);
  rep.C2 = std::min(rep.u2, rep.v2);
  rep.C2_box = std::max(rep.u2, rep.v2);
  return rep;
}

}  // namespace rdstab
