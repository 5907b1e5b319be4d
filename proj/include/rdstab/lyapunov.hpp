#pragma once

#include <vector>

#include "rdstab/analysis.hpp"
#include "rdstab/model.hpp"
#include "rdstab/sim.hpp"

namespace rdstab {

struct LyapunovConfig {
  int quad_points = 64;  // initial Gauss-Legendre nodes per H evaluation
};

// H(u) = integral from alpha to u of (g(r) - g(alpha)) dr, adaptive
// Gauss-Legendre to rel tol 1e-10. Nonnegative whenever g is nondecreasing.
// Throws DomainError for u outside (0, delta).
double eval_H(const ModelSpec& spec, double alpha, double u,
              const LyapunovConfig& cfg = {});

// V = trapezoid_x[ sigma*H(u(x)) + (lambda/2)*(v(x) - v*)^2 ]. Field values
// within 1e-10 of the (0, delta) endpoints are clamped inward (integrator
// noise); anything farther out is a DomainError.
double eval_V(const ModelSpec& spec, const EquilibriumReport& eq,
              const std::vector<double>& u_field,
              const std::vector<double>& v_field, const Grid1D& grid,
              const LyapunovConfig& cfg = {});

// Pointwise energy sigma*H(u) + (lambda/2)*(v - v*)^2 for the ODE case.
double eval_E(const ModelSpec& spec, const EquilibriumReport& eq, double u,
              double v, const LyapunovConfig& cfg = {});

enum class GlobalVerdict { GlobalODE, GlobalPDE, Inconclusive };

const char* to_string(GlobalVerdict verdict);

// GlobalPDE when con6 and con2 hold (the Lyapunov-functional theorem),
// else GlobalODE when f' < sigma on (0, delta), else Inconclusive. These are
// sufficient conditions; Inconclusive never means "unstable".
GlobalVerdict verdict_global(const ModelSpec& spec,
                             const EquilibriumReport& eq,
                             const HypothesisReport& hyp);

// Fills trajectory.diagnostics[k].lyapunov_v for every snapshot: V for PDE
// trajectories (grid required), pointwise E for ODE ones.
void fill_lyapunov(Trajectory& traj, const ModelSpec& spec,
                   const EquilibriumReport& eq, const Grid1D* grid,
                   const LyapunovConfig& cfg = {});

}  // namespace rdstab
