#include "rdstab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "rdstab/errors.hpp"
#include "rdstab/rootfind.hpp"

namespace rdstab {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be strictly positive");
  }
}

void check_finite(double value, const char* what, double u) {
  if (!std::isfinite(value)) {
    throw NonFiniteError(std::string(what) + " is non-finite at u = " +
                         std::to_string(u));
  }
}

struct ScanMin {
  double value = std::numeric_limits<double>::infinity();
  double arg = 0.0;
};

// Minimum of fn over the uniform interior grid of (0, delta), skipping points
// with |u - alpha_excl.first| <= alpha_excl.second. A sign change between
// adjacent grid points triggers a 3-point local refinement so that narrow dips
// are not stepped over.
ScanMin scan_min(const std::function<double(double)>& fn, double delta, int n,
                 const char* what,
                 std::pair<double, double> alpha_excl = {-1.0, 0.0}) {
  ScanMin best;
  double prev_u = 0.0;
  double prev_v = 0.0;
  bool have_prev = false;
  auto excluded = [&](double u) {
    return std::fabs(u - alpha_excl.first) <= alpha_excl.second;
  };
  auto consider = [&](double u) {
    const double v = fn(u);
    check_finite(v, what, u);
    if (v < best.value) {
      best.value = v;
      best.arg = u;
    }
    return v;
  };
  for (int k = 1; k <= n; ++k) {
    const double u =
        delta * static_cast<double>(k) / static_cast<double>(n + 1);
    if (excluded(u)) continue;
    const double v = consider(u);
    if (have_prev && (prev_v > 0.0) != (v > 0.0)) {
      for (int j = 1; j <= 3; ++j) {
        const double um = prev_u + (u - prev_u) * j / 4.0;
        if (!excluded(um)) consider(um);
      }
    }
    prev_u = u;
    prev_v = v;
    have_prev = true;
  }
  return best;
}

}  // namespace

ModelSpec make_model_spec(ScalarFn f, ScalarFn g, ScalarFn phi, double d1,
                          double d2, double lambda, double sigma,
                          double delta) {
  require_positive(d1, "d1");
  require_positive(d2, "d2");
  require_positive(lambda, "lambda");
  require_positive(sigma, "sigma");
  require_positive(delta, "delta");
  const double f_delta = f(delta);
  const double scale = std::max(1.0, std::fabs(f(delta / 2.0)));
  if (!(std::fabs(f_delta) <= 1e-9 * scale)) {
    throw DomainError("delta is not a root of f: |f(delta)| = " +
                      std::to_string(std::fabs(f_delta)));
  }
  ModelSpec spec;
  spec.f = std::move(f);
  spec.g = std::move(g);
  spec.phi = std::move(phi);
  spec.d1 = d1;
  spec.d2 = d2;
  spec.lambda = lambda;
  spec.sigma = sigma;
  spec.delta = delta;
  return spec;
}

ModelSpec preset_lengyel_epstein(double a, double mu, double lambda,
                                 double sigma, double d1, double d2) {
  require_positive(a, "a");
  require_positive(mu, "mu");
  ScalarFn f{
      [a, mu](double u) { return (a - mu * u) * (1.0 + u * u) / u; },
      [a, mu](double u) { return -a / (u * u) + a - 2.0 * mu * u; },
  };
  ScalarFn g{
      [](double u) { return 1.0 + u * u; },
      [](double u) { return 2.0 * u; },
  };
  ScalarFn phi{
      [](double u) { return u / (1.0 + u * u); },
      [](double u) {
        const double w = 1.0 + u * u;
        return (1.0 - u * u) / (w * w);
      },
  };
  ModelSpec spec = make_model_spec(std::move(f), std::move(g), std::move(phi),
                                   d1, d2, lambda, sigma, a / mu);
  // Same expression trees as f/g/phi above, so the fused kernel is
  // bit-identical to the per-node path.
  spec.reaction_batch = [a, mu, lambda, sigma](const double* u,
                                               const double* v, double* du,
                                               double* dv, int n) {
    for (int i = 0; i < n; ++i) {
      const double ui = u[i];
      const double w = 1.0 + ui * ui;
      const double fu = (a - mu * ui) * w / ui;
      const double ph = ui / w;
      du[i] += (fu - lambda * v[i]) * ph;
      dv[i] += sigma * (w - v[i]) * ph;
    }
  };
  return spec;
}

ModelSpec preset_fitzhugh_nagumo(double beta, double eps, double gamma,
                                 double stim, double d1, double d2) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1)");
  }
  require_positive(eps, "eps");
  require_positive(gamma, "gamma");
  ScalarFn f{
      [beta, stim](double u) {
        return -u * u * u + (1.0 + beta) * u * u - beta * u + stim;
      },
      [beta](double u) { return -3.0 * u * u + 2.0 * (1.0 + beta) * u - beta; },
  };
  ScalarFn g{
      [gamma](double u) { return u / gamma; },
      [gamma](double) { return 1.0 / gamma; },
  };
  ScalarFn phi{
      [](double) { return 1.0; },
      [](double) { return 0.0; },
  };

  // The cubic opens downward, so doubling the upper end from 1 eventually
  // brackets the first positive root; f must start positive for con5.
  if (!(f(1e-9) > 0.0)) {
    throw RootError("f is not positive near u = 0; no admissible delta");
  }
  double hi = 1.0;
  int doublings = 0;
  while (f(hi) >= 0.0) {
    hi *= 2.0;
    if (++doublings > 60) {
      throw RootError("f has no positive root (stim too large?)");
    }
  }
  const double delta =
      bisect([&f](double u) { return f(u); }, 1e-9, hi, 1e-10, 0.0);
  ModelSpec spec = make_model_spec(std::move(f), std::move(g), std::move(phi),
                                   d1, d2, 1.0, eps * gamma, delta);
  // lambda == 1 and phi == 1 here, so those factors are exact no-ops and drop
  // out; everything else mirrors f/g above term for term.
  const double sigma = spec.sigma;
  spec.reaction_batch = [beta, stim, gamma, sigma](const double* u,
                                                   const double* v, double* du,
                                                   double* dv, int n) {
    for (int i = 0; i < n; ++i) {
      const double ui = u[i];
      const double fu =
          -ui * ui * ui + (1.0 + beta) * ui * ui - beta * ui + stim;
      du[i] += fu - v[i];
      dv[i] += sigma * (ui / gamma - v[i]);
    }
  };
  return spec;
}

HypothesisReport check_hypotheses(const ModelSpec& spec, double alpha,
                                  int grid_size) {
  if (!(spec.delta > 0.0)) throw DomainError("delta must be positive");
  if (grid_size < 64) throw DomainError("grid_size must be >= 64");
  if (!(alpha > 0.0 && alpha < spec.delta)) {
    throw DomainError("alpha must lie in (0, delta)");
  }

  const double delta = spec.delta;
  const double phi0 = spec.phi(0.0);
  const double phip0 = spec.phi.deriv(0.0);
  const double f_alpha = spec.f(alpha);
  const std::pair<double, double> near_alpha{alpha, 1e-6 * std::fabs(alpha)};
  HypothesisReport rep;

  // con1: phi(0) = 0 and f(delta) = 0, both as toleranced absolute tests.
  {
    const double f_tol = 1e-9 * std::max(1.0, std::fabs(spec.f(delta / 2.0)));
    const double phi_slack = 1e-12 - std::fabs(phi0);
    const double f_slack = f_tol - std::fabs(spec.f(delta));
    rep.con1.margin = std::min(phi_slack, f_slack);
    rep.con1.holds = rep.con1.margin >= 0.0;
    if (!rep.con1.holds) rep.con1.witness = (phi_slack < f_slack) ? 0.0 : delta;
  }

  // con5: min of f, g, phi stays positive.
  {
    const auto m = scan_min(
        [&spec](double u) {
          return std::min({spec.f(u), spec.g(u), spec.phi(u)});
        },
        delta, grid_size, "f/g/phi");
    rep.con5.margin = m.value;
    rep.con5.holds = m.value > 0.0;
    if (!rep.con5.holds) rep.con5.witness = m.arg;
  }

  // con2: g' >= 0.
  {
    const auto m = scan_min([&spec](double u) { return spec.g.deriv(u); },
                            delta, grid_size, "g'");
    rep.con2.margin = m.value;
    rep.con2.holds = m.value >= 0.0;
    if (!rep.con2.holds) rep.con2.witness = m.arg;
  }

  // con3: lambda*g(alpha) = f(alpha) up to 1e-8 * scale.
  {
    const double diff = std::fabs(spec.lambda * spec.g(alpha) - f_alpha);
    const double tol = 1e-8 * std::max(1.0, std::fabs(f_alpha));
    rep.con3.margin = tol - diff;
    rep.con3.holds = rep.con3.margin >= 0.0;
    if (!rep.con3.holds) rep.con3.witness = alpha;
  }

  // con4/con6 are strict sign conditions away from alpha. A small tolerance
  // admits tangency cases whose margin is zero in exact arithmetic.
  const double sign_tol = 1e-9 * std::max(1.0, std::fabs(f_alpha));
  {
    const auto m = scan_min(
        [&spec, alpha](double u) {
          return (alpha - u) * (spec.f(u) - spec.lambda * spec.g(u));
        },
        delta, grid_size, "con4 product", near_alpha);
    rep.con4.margin = m.value;
    rep.con4.holds = m.value >= -sign_tol;
    if (!rep.con4.holds) rep.con4.witness = m.arg;
  }
  {
    const auto m = scan_min(
        [&spec, alpha, f_alpha](double u) {
          return (alpha - u) * (spec.f(u) - f_alpha);
        },
        delta, grid_size, "con6 product", near_alpha);
    rep.con6.margin = m.value;
    rep.con6.holds = m.value >= -sign_tol;
    if (!rep.con6.holds) rep.con6.witness = m.arg;
  }

  // theorem5: f' < sigma everywhere; margin is the worst slack sigma - f'.
  {
    const auto m = scan_min(
        [&spec](double u) { return spec.sigma - spec.f.deriv(u); }, delta,
        grid_size, "sigma - f'");
    rep.theorem5.margin = m.value;
    rep.theorem5.holds = m.value > 0.0;
    if (!rep.theorem5.holds) rep.theorem5.witness = m.arg;
  }

  // Sublinearity (meaningful only for phi(0) = 0 with phi'(0) > 0): the map
  // u -> phi(u)/u must stay in (0, phi'(0)] and be non-increasing.
  if (phi0 == 0.0 && phip0 > 0.0) {
    double worst = std::numeric_limits<double>::infinity();
    double worst_arg = 0.0;
    double prev_ratio = 0.0;
    bool have_prev = false;
    for (int k = 1; k <= grid_size; ++k) {
      const double u =
          delta * static_cast<double>(k) / static_cast<double>(grid_size + 1);
      const double ratio = spec.phi(u) / u;
      check_finite(ratio, "phi(u)/u", u);
      const double slack = std::min(phip0 - ratio, ratio);
      if (slack < worst) { worst = slack; worst_arg = u; }
      if (have_prev) {
        const double decrease = prev_ratio - ratio;
        if (decrease < worst) { worst = decrease; worst_arg = u; }
      }
      prev_ratio = ratio;
      have_prev = true;
    }
    rep.phi_sublinear.margin = worst;
    rep.phi_sublinear.holds = worst >= -1e-12 * std::max(1.0, phip0);
    if (!rep.phi_sublinear.holds) rep.phi_sublinear.witness = worst_arg;
  } else {
    rep.phi_sublinear.applicable = false;
    rep.phi_sublinear.holds = true;
  }

  // phi_gen applies only when phi(0) > 0: lambda*g(delta) <= lim_{u->0+} f(u),
  // the limit approximated at u = 1e-8 * delta.
  if (phi0 > 0.0) {
    const double f_limit = spec.f(1e-8 * delta);
    check_finite(f_limit, "f", 1e-8 * delta);
    rep.phi_gen.margin = f_limit - spec.lambda * spec.g(delta);
    rep.phi_gen.holds = rep.phi_gen.margin >= 0.0;
    if (!rep.phi_gen.holds) rep.phi_gen.witness = 1e-8 * delta;
  } else {
    rep.phi_gen.applicable = false;
    rep.phi_gen.holds = true;
  }

  return rep;
}

}  // namespace rdstab
