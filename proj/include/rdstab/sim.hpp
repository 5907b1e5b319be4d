#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rdstab/analysis.hpp"
#include "rdstab/model.hpp"

namespace rdstab {

struct Grid1D {
  double length = 0.0;
  int n = 0;
  double dx = 0.0;
  std::vector<double> nodes;
};

// Uniform vertex-centered grid on [0, L]; dx = L/(n-1).
Grid1D make_grid(double length, int n);

struct ConstantInit {
  double u0 = 0.0;
  double v0 = 0.0;
};

// u(x,0) = u_base + amp*sin(x/wavelen), v(x,0) = v_base + amp*cos(x/wavelen).
struct SinePerturbedInit {
  double u_base = 0.0;
  double v_base = 0.0;
  double amp = 0.0;
  double wavelen = 1.0;
};

using InitialData = std::variant<ConstantInit, SinePerturbedInit>;

struct SnapshotDiag {
  double dist_sup = 0.0;     // sup-norm distance to (u*, v*)
  bool in_rect = true;       // inside the reference rectangle (tol 1e-6)
  double lyapunov_v = 0.0;   // filled by the lyapunov module
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> u_fields;  // one entry per snapshot
  std::vector<std::vector<double>> v_fields;  // (scalars for the ODE case)
  std::vector<SnapshotDiag> diagnostics;
  double u_star = 0.0;  // distance reference used in diagnostics
  double v_star = 0.0;
  double dt = 0.0;      // PDE: fixed step actually used
  bool negativity_warning = false;  // some node left [0, inf) by > 1e-10
};

// Test hooks: fixed-step override and reaction switch-off (pure diffusion).
struct SimOptions {
  std::optional<double> dt_override;
  bool disable_reaction = false;
};

// Classic RK4 with step-doubling adaptivity (rel 1e-8, abs 1e-10); snapshots
// at multiples of dt_out plus the final time. Throws BlowupError past 1e12
// and StepError when dt underflows below 1e-14 * t_end.
Trajectory integrate_ode(const ModelSpec& spec, double u0, double v0,
                         double t_end, double dt_out);

// Method of lines on the grid: second-order Laplacian with mirror ghost
// nodes (Neumann), explicit RK4, dt = min(0.4*dx^2/(2*max(d1,d2)),
// 0.1/Lip, dt_out) unless overridden.
Trajectory integrate_pde_1d(const ModelSpec& spec, const Grid1D& grid,
                            const InitialData& init, double t_end,
                            double dt_out, const SimOptions& opts = {});

// Same integrator on caller-supplied initial fields (size n each).
Trajectory integrate_pde_1d_fields(const ModelSpec& spec, const Grid1D& grid,
                                   std::vector<double> u0,
                                   std::vector<double> v0, double t_end,
                                   double dt_out, const SimOptions& opts = {});

struct Scenario {
  Grid1D grid;
  InitialData init;
  double t_end = 0.0;
  double dt_out = 1.0;
  int max_modes = 64;  // spectrum truncation for the per-spec verdict
};

struct SweepSummary {
  std::string status;  // "ok" or the error message
  double final_dist = 0.0;
  double growth_factor = 0.0;  // max over t of dist(t)/dist(0)
  std::optional<double> d_crit;
  std::optional<StabilityVerdict> verdict;
  bool consistent = false;  // simulation outcome agrees with the verdict
};

// Independent simulations of the scenario for each spec, parallelized up to
// max_threads; per-spec failures land in the status column, the batch
// continues. Throws DomainError on an empty list.
std::vector<SweepSummary> sweep(const std::vector<ModelSpec>& specs,
                                const Scenario& scenario, int max_threads);

}  // namespace rdstab
