#include "rdstab/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdstab/errors.hpp"
#include "rdstab/quadrature.hpp"

namespace rdstab {

namespace {

// Clamps integrator noise of size <= 1e-10 back into (0, delta); larger
// excursions are genuine domain violations.
double clamp_to_domain(double u, double delta) {
  constexpr double kNoise = 1e-10;
  if (u <= 0.0) {
    if (u >= -kNoise) return kNoise;
    throw DomainError("u = " + std::to_string(u) + " outside (0, delta)");
  }
  if (u >= delta) {
    if (u <= delta + kNoise) return delta * (1.0 - 1e-12);
    throw DomainError("u = " + std::to_string(u) + " outside (0, delta)");
  }
  return u;
}

}  // namespace

const char* to_string(GlobalVerdict verdict) {
  switch (verdict) {
    case GlobalVerdict::GlobalODE: return "GlobalODE";
    case GlobalVerdict::GlobalPDE: return "GlobalPDE";
    case GlobalVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

double eval_H(const ModelSpec& spec, double alpha, double u,
              const LyapunovConfig& cfg) {
  if (cfg.quad_points < 8) throw DomainError("quad_points must be >= 8");
  const double uc = clamp_to_domain(u, spec.delta);
  const double g_alpha = spec.g(alpha);
  const int panels = std::max(1, cfg.quad_points / 8);
  // Each evaluation of g(r) - g(alpha) carries absolute roundoff of order
  // eps * |g(alpha)|; integrated over [alpha, u] that is the resolution
  // floor of H, below which panel doubling only chases noise.
  const double noise_floor = 32.0 * std::numeric_limits<double>::epsilon() *
                             std::max(1.0, std::fabs(g_alpha)) *
                             std::fabs(uc - alpha);
  return integrate(
      [&spec, g_alpha](double r) { return spec.g(r) - g_alpha; }, alpha, uc,
      panels, 1e-10, noise_floor);
}

double eval_V(const ModelSpec& spec, const EquilibriumReport& eq,
              const std::vector<double>& u_field,
              const std::vector<double>& v_field, const Grid1D& grid,
              const LyapunovConfig& cfg) {
  if (u_field.size() != static_cast<size_t>(grid.n) ||
      v_field.size() != static_cast<size_t>(grid.n)) {
    throw DomainError("field size does not match grid");
  }
  // Trapezoid in x of the pointwise energy density.
  double total = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const double dv = v_field[j] - eq.v_star;
    const double density = spec.sigma * eval_H(spec, eq.alpha, u_field[j], cfg) +
                           0.5 * spec.lambda * dv * dv;
    const double weight = (j == 0 || j == grid.n - 1) ? 0.5 : 1.0;
    total += weight * density;
  }
  return total * grid.dx;
}

double eval_E(const ModelSpec& spec, const EquilibriumReport& eq, double u,
              double v, const LyapunovConfig& cfg) {
  const double dv = v - eq.v_star;
  return spec.sigma * eval_H(spec, eq.alpha, u, cfg) +
         0.5 * spec.lambda * dv * dv;
}

GlobalVerdict verdict_global(const ModelSpec&, const EquilibriumReport&,
                             const HypothesisReport& hyp) {
  if (hyp.con6.holds && hyp.con2.holds) return GlobalVerdict::GlobalPDE;
  if (hyp.theorem5.holds) return GlobalVerdict::GlobalODE;
  return GlobalVerdict::Inconclusive;
}

void fill_lyapunov(Trajectory& traj, const ModelSpec& spec,
                   const EquilibriumReport& eq, const Grid1D* grid,
                   const LyapunovConfig& cfg) {
  for (size_t k = 0; k < traj.times.size(); ++k) {
    if (grid != nullptr) {
      traj.diagnostics[k].lyapunov_v =
          eval_V(spec, eq, traj.u_fields[k], traj.v_fields[k], *grid, cfg);
    } else {
      traj.diagnostics[k].lyapunov_v =
          eval_E(spec, eq, traj.u_fields[k][0], traj.v_fields[k][0], cfg);
    }
  }
}

}  // namespace rdstab
