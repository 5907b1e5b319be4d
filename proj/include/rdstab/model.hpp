#pragma once

#include <optional>

#include "rdstab/scalar_fn.hpp"

namespace rdstab {

// The two-species reaction-diffusion model
//   u_t - d1*Lap(u) = (f(u) - lambda*v) * phi(u)
//   v_t - d2*Lap(v) = sigma * (g(u) - v) * phi(u)
// with homogeneous Neumann boundaries. delta is the positive root of f;
// the state rectangle of interest is (0, delta) x (0, g(delta)).
struct ModelSpec {
  ScalarFn f;
  ScalarFn g;
  ScalarFn phi;
  double d1 = 0.0;
  double d2 = 0.0;
  double lambda = 0.0;
  double sigma = 0.0;
  double delta = 0.0;

  // Optional fused kernel adding the reaction terms to du, dv for n nodes at
  // once. Presets install one; it must reproduce reaction_u/reaction_v
  // exactly (same expressions, same order). Pure performance: the per-node
  // path stands in whenever it is absent.
  std::function<void(const double* u, const double* v, double* du, double* dv,
                     int n)>
      reaction_batch;

  double reaction_u(double u, double v) const {
    return (f(u) - lambda * v) * phi(u);
  }
  double reaction_v(double u, double v) const {
    return sigma * (g(u) - v) * phi(u);
  }
};

// Validates positivity of the control parameters and |f(delta)| <= 1e-9 *
// max(1, |f(delta/2)|). Throws DomainError on violation.
ModelSpec make_model_spec(ScalarFn f, ScalarFn g, ScalarFn phi, double d1,
                          double d2, double lambda, double sigma, double delta);

// f(u) = (a - mu*u)(1 + u^2)/u, g(u) = 1 + u^2, phi(u) = u/(1 + u^2),
// delta = a/mu. The b, c constants of the original four-parameter form enter
// through sigma -> sigma*b and d2 -> sigma*c.
ModelSpec preset_lengyel_epstein(double a, double mu, double lambda,
                                 double sigma, double d1, double d2);

// f(u) = -u^3 + (1+beta)u^2 - beta*u + stim, g(u) = u/gamma, phi = 1,
// lambda = 1, sigma = eps*gamma. delta is located by bisection after doubling
// the upper bracket until f goes negative.
ModelSpec preset_fitzhugh_nagumo(double beta, double eps, double gamma,
                                 double stim, double d1, double d2);

// One structural condition: margin > 0 means the condition holds with slack,
// margin < 0 quantifies the worst violation. witness is a u-value where the
// violation is attained (absent when the condition holds). applicable=false
// marks conditions that do not apply to this spec (then holds=true, margin=0).
struct ConditionEntry {
  bool holds = false;
  std::optional<double> witness;
  double margin = 0.0;
  bool applicable = true;
};

struct HypothesisReport {
  ConditionEntry con1;           // phi(0) = 0 and f(delta) = 0
  ConditionEntry con5;           // f, g, phi > 0 on (0, delta)
  ConditionEntry con2;           // g' >= 0 on (0, delta)
  ConditionEntry con3;           // lambda*g(alpha) = f(alpha)
  ConditionEntry con4;           // (alpha-u)[f(u) - lambda*g(u)] > 0, u != alpha
  ConditionEntry con6;           // (alpha-u)[f(u) - f(alpha)]   > 0, u != alpha
  ConditionEntry theorem5;       // f'(u) < sigma on (0, delta)
  ConditionEntry phi_sublinear;  // 0 < phi(u)/u <= phi'(0), ratio non-increasing
  ConditionEntry phi_gen;        // phi(0) > 0 case: lambda*g(delta) <= f(0+)
};

// Evaluates every structural condition on a uniform grid of grid_size
// interior points of (0, delta), refining around sign changes. alpha must lie
// in (0, delta); pass the value found by find_equilibrium.
HypothesisReport check_hypotheses(const ModelSpec& spec, double alpha,
                                  int grid_size);

}  // namespace rdstab
