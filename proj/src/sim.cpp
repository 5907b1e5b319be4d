#include "rdstab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>

#include "rdstab/errors.hpp"

namespace rdstab {

namespace {

constexpr double kBlowup = 1e12;

// Builds 0, dt_out, 2*dt_out, ..., then t_end when it is not a multiple.
std::vector<double> snapshot_times(double t_end, double dt_out) {
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  if (!(dt_out > 0.0)) throw DomainError("dt_out must be positive");
  std::vector<double> times{0.0};
  const long long k_last =
      static_cast<long long>(std::floor(t_end / dt_out + 1e-9));
  for (long long k = 1; k <= k_last; ++k) {
    times.push_back(static_cast<double>(k) * dt_out);
  }
  if (times.back() < t_end * (1.0 - 1e-12)) times.push_back(t_end);
  else times.back() = t_end;
  return times;
}

SnapshotDiag make_diag(const ModelSpec& spec, double u_star, double v_star,
                       const std::vector<double>& u,
                       const std::vector<double>& v) {
  SnapshotDiag diag;
  const double g_delta = spec.g(spec.delta);
  double dist = 0.0;
  bool inside = true;
  for (size_t j = 0; j < u.size(); ++j) {
    dist = std::max(dist, std::fabs(u[j] - u_star));
    dist = std::max(dist, std::fabs(v[j] - v_star));
    if (u[j] <= -1e-6 || u[j] >= spec.delta + 1e-6 || v[j] <= -1e-6 ||
        v[j] >= g_delta + 1e-6) {
      inside = false;
    }
  }
  diag.dist_sup = dist;
  diag.in_rect = inside;
  return diag;
}

// Sampled Lipschitz scale of the reaction Jacobian over the sub-rectangle
// [0.02*delta, delta] x [0, g(delta)] (the full rectangle is unbounded for
// nonlinearities singular at u = 0). Used only to budget the time step.
double reaction_lipschitz(const ModelSpec& spec) {
  const double g_delta = spec.g(spec.delta);
  double lip = 0.0;
  for (int i = 0; i <= 32; ++i) {
    const double u = spec.delta * (0.02 + 0.98 * i / 32.0);
    const double fu = spec.f(u);
    const double fpu = spec.f.deriv(u);
    const double gu = spec.g(u);
    const double gpu = spec.g.deriv(u);
    const double pu = spec.phi(u);
    const double ppu = spec.phi.deriv(u);
    for (int j = 0; j <= 32; ++j) {
      const double v = g_delta * j / 32.0;
      const double fu_row = std::fabs(fpu * pu + (fu - spec.lambda * v) * ppu) +
                            std::fabs(spec.lambda * pu);
      const double fv_row =
          spec.sigma * (std::fabs(gpu * pu + (gu - v) * ppu) + std::fabs(pu));
      lip = std::max(lip, std::max(fu_row, fv_row));
    }
  }
  return lip;
}

struct PdeWorkspace {
  std::vector<double> k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, tu, tv;
  explicit PdeWorkspace(int n)
      : k1u(n), k1v(n), k2u(n), k2v(n), k3u(n), k3v(n), k4u(n), k4v(n), tu(n),
        tv(n) {}
};

void pde_rhs(const ModelSpec& spec, const Grid1D& grid, bool react,
             const std::vector<double>& u, const std::vector<double>& v,
             std::vector<double>& du, std::vector<double>& dv) {
  const int n = grid.n;
  const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
  for (int j = 0; j < n; ++j) {
    // Mirror ghost nodes u_{-1} = u_1, u_n = u_{n-2} (zero-flux boundary).
    double lap_u, lap_v;
    if (j == 0) {
      lap_u = 2.0 * (u[1] - u[0]) * inv_dx2;
      lap_v = 2.0 * (v[1] - v[0]) * inv_dx2;
    } else if (j == n - 1) {
      lap_u = 2.0 * (u[n - 2] - u[n - 1]) * inv_dx2;
      lap_v = 2.0 * (v[n - 2] - v[n - 1]) * inv_dx2;
    } else {
      lap_u = (u[j - 1] - 2.0 * u[j] + u[j + 1]) * inv_dx2;
      lap_v = (v[j - 1] - 2.0 * v[j] + v[j + 1]) * inv_dx2;
    }
    du[j] = spec.d1 * lap_u;
    dv[j] = spec.d2 * lap_v;
    if (react && !spec.reaction_batch) {
      const double pu = spec.phi(u[j]);
      du[j] += (spec.f(u[j]) - spec.lambda * v[j]) * pu;
      dv[j] += spec.sigma * (spec.g(u[j]) - v[j]) * pu;
    }
  }
  if (react && spec.reaction_batch) {
    spec.reaction_batch(u.data(), v.data(), du.data(), dv.data(), n);
  }
}

void rk4_step(const ModelSpec& spec, const Grid1D& grid, bool react, double h,
              std::vector<double>& u, std::vector<double>& v,
              PdeWorkspace& ws) {
  const int n = grid.n;
  pde_rhs(spec, grid, react, u, v, ws.k1u, ws.k1v);
  for (int j = 0; j < n; ++j) {
    ws.tu[j] = u[j] + 0.5 * h * ws.k1u[j];
    ws.tv[j] = v[j] + 0.5 * h * ws.k1v[j];
  }
  pde_rhs(spec, grid, react, ws.tu, ws.tv, ws.k2u, ws.k2v);
  for (int j = 0; j < n; ++j) {
    ws.tu[j] = u[j] + 0.5 * h * ws.k2u[j];
    ws.tv[j] = v[j] + 0.5 * h * ws.k2v[j];
  }
  pde_rhs(spec, grid, react, ws.tu, ws.tv, ws.k3u, ws.k3v);
  for (int j = 0; j < n; ++j) {
    ws.tu[j] = u[j] + h * ws.k3u[j];
    ws.tv[j] = v[j] + h * ws.k3v[j];
  }
  pde_rhs(spec, grid, react, ws.tu, ws.tv, ws.k4u, ws.k4v);
  const double w = h / 6.0;
  for (int j = 0; j < n; ++j) {
    u[j] += w * (ws.k1u[j] + 2.0 * ws.k2u[j] + 2.0 * ws.k3u[j] + ws.k4u[j]);
    v[j] += w * (ws.k1v[j] + 2.0 * ws.k2v[j] + 2.0 * ws.k3v[j] + ws.k4v[j]);
  }
}

void check_blowup(const std::vector<double>& u, const std::vector<double>& v,
                  double t) {
  for (size_t j = 0; j < u.size(); ++j) {
    if (!(std::fabs(u[j]) <= kBlowup) || !(std::fabs(v[j]) <= kBlowup)) {
      throw BlowupError("solution exceeded 1e12 at t = " + std::to_string(t));
    }
  }
}

struct OdeState {
  double u, v;
};

OdeState ode_rk4(const ModelSpec& spec, const OdeState& y, double h) {
  auto fu = [&spec](const OdeState& s) { return spec.reaction_u(s.u, s.v); };
  auto fv = [&spec](const OdeState& s) { return spec.reaction_v(s.u, s.v); };
  const double k1u = fu(y), k1v = fv(y);
  const OdeState y2{y.u + 0.5 * h * k1u, y.v + 0.5 * h * k1v};
  const double k2u = fu(y2), k2v = fv(y2);
  const OdeState y3{y.u + 0.5 * h * k2u, y.v + 0.5 * h * k2v};
  const double k3u = fu(y3), k3v = fv(y3);
  const OdeState y4{y.u + h * k3u, y.v + h * k3v};
  const double k4u = fu(y4), k4v = fv(y4);
  return {y.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
          y.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

// Advances y from t to t_target with step-doubling RK4 (rel 1e-8, abs 1e-10).
void ode_advance(const ModelSpec& spec, OdeState& y, double t, double t_target,
                 double& dt, double t_end) {
  constexpr double kRel = 1e-8;
  constexpr double kAbs = 1e-10;
  while (t < t_target) {
    if (dt < 1e-14 * t_end) {
      throw StepError("ODE step size underflow at t = " + std::to_string(t));
    }
    bool clipped = false;
    double h = dt;
    if (t + h >= t_target) {
      h = t_target - t;
      clipped = true;
    }
    const OdeState full = ode_rk4(spec, y, h);
    const OdeState half = ode_rk4(spec, ode_rk4(spec, y, 0.5 * h), 0.5 * h);
    const double eu =
        std::fabs(half.u - full.u) /
        (kAbs + kRel * std::max(std::fabs(y.u), std::fabs(half.u)));
    const double ev =
        std::fabs(half.v - full.v) /
        (kAbs + kRel * std::max(std::fabs(y.v), std::fabs(half.v)));
    const double err = std::max(eu, ev) / 15.0;
    if (err <= 1.0) {
      // Accept with local extrapolation (classic step-doubling).
      y.u = half.u + (half.u - full.u) / 15.0;
      y.v = half.v + (half.v - full.v) / 15.0;
      t += h;
      if (!(std::fabs(y.u) <= kBlowup) || !(std::fabs(y.v) <= kBlowup)) {
        throw BlowupError("ODE solution exceeded 1e12 at t = " +
                          std::to_string(t));
      }
    }
    const double factor =
        err > 0.0 ? 0.9 * std::pow(err, -0.2)
                  : 5.0;
    const double grown = h * std::clamp(factor, 0.2, 5.0);
    if (!clipped || err > 1.0) dt = grown;
    else dt = std::max(dt, grown);
  }
}

}  // namespace

Grid1D make_grid(double length, int n) {
  if (!(length > 0.0)) throw DomainError("grid length must be positive");
  if (n < 8) throw DomainError("grid needs at least 8 nodes");
  Grid1D grid;
  grid.length = length;
  grid.n = n;
  grid.dx = length / static_cast<double>(n - 1);
  grid.nodes.resize(n);
  for (int j = 0; j < n; ++j) grid.nodes[j] = grid.dx * j;
  return grid;
}

Trajectory integrate_ode(const ModelSpec& spec, double u0, double v0,
                         double t_end, double dt_out) {
  if (!(u0 > 0.0) || !(v0 > 0.0)) {
    throw DomainError("initial data must be positive");
  }
  const EquilibriumReport eq = find_equilibrium(spec);
  const auto times = snapshot_times(t_end, dt_out);

  Trajectory traj;
  traj.u_star = eq.u_star;
  traj.v_star = eq.v_star;
  OdeState y{u0, v0};
  double dt = std::min(dt_out, t_end) / 16.0;
  double t = 0.0;
  for (double target : times) {
    ode_advance(spec, y, t, target, dt, t_end);
    t = target;
    traj.times.push_back(target);
    traj.u_fields.push_back({y.u});
    traj.v_fields.push_back({y.v});
    traj.diagnostics.push_back(
        make_diag(spec, eq.u_star, eq.v_star, {y.u}, {y.v}));
    if (y.u < -1e-10 || y.v < -1e-10) traj.negativity_warning = true;
  }
  return traj;
}

Trajectory integrate_pde_1d_fields(const ModelSpec& spec, const Grid1D& grid,
                                   std::vector<double> u0,
                                   std::vector<double> v0, double t_end,
                                   double dt_out, const SimOptions& opts) {
  if (u0.size() != static_cast<size_t>(grid.n) ||
      v0.size() != static_cast<size_t>(grid.n)) {
    throw DomainError("initial fields do not match the grid");
  }
  for (int j = 0; j < grid.n; ++j) {
    if (u0[j] < 0.0 || v0[j] < 0.0) {
      throw DomainError("initial data must be non-negative");
    }
  }
  const EquilibriumReport eq = find_equilibrium(spec);
  const auto times = snapshot_times(t_end, dt_out);

  double dt = std::min(0.4 * grid.dx * grid.dx / (2.0 * std::max(spec.d1, spec.d2)),
                       dt_out);
  if (!opts.disable_reaction) {
    const double lip = reaction_lipschitz(spec);
    if (lip > 0.0) dt = std::min(dt, 0.1 / lip);
  }
  if (opts.dt_override) dt = *opts.dt_override;
  if (!(dt > 0.0) || dt < 1e-14 * t_end) {
    throw StepError("PDE step size underflow: dt = " + std::to_string(dt));
  }

  Trajectory traj;
  traj.u_star = eq.u_star;
  traj.v_star = eq.v_star;
  traj.dt = dt;

  PdeWorkspace ws(grid.n);
  std::vector<double> u = std::move(u0);
  std::vector<double> v = std::move(v0);
  const bool react = !opts.disable_reaction;

  auto record = [&](double t_now) {
    traj.times.push_back(t_now);
    traj.u_fields.push_back(u);
    traj.v_fields.push_back(v);
    traj.diagnostics.push_back(make_diag(spec, eq.u_star, eq.v_star, u, v));
    for (int j = 0; j < grid.n; ++j) {
      if (u[j] < -1e-10 || v[j] < -1e-10) {
        traj.negativity_warning = true;
        break;
      }
    }
  };

  record(0.0);
  for (size_t s = 1; s < times.size(); ++s) {
    const double span = times[s] - times[s - 1];
    const long long m =
        std::max(1LL, static_cast<long long>(std::ceil(span / dt - 1e-12)));
    const double h = span / static_cast<double>(m);
    for (long long i = 0; i < m; ++i) {
      rk4_step(spec, grid, react, h, u, v, ws);
    }
    check_blowup(u, v, times[s]);
    record(times[s]);
  }
  return traj;
}

Trajectory integrate_pde_1d(const ModelSpec& spec, const Grid1D& grid,
                            const InitialData& init, double t_end,
                            double dt_out, const SimOptions& opts) {
  std::vector<double> u0(grid.n), v0(grid.n);
  if (const auto* c = std::get_if<ConstantInit>(&init)) {
    std::fill(u0.begin(), u0.end(), c->u0);
    std::fill(v0.begin(), v0.end(), c->v0);
  } else {
    const auto& s = std::get<SinePerturbedInit>(init);
    if (!(s.wavelen > 0.0)) throw DomainError("wavelen must be positive");
    for (int j = 0; j < grid.n; ++j) {
      const double x = grid.nodes[j];
      u0[j] = s.u_base + s.amp * std::sin(x / s.wavelen);
      v0[j] = s.v_base + s.amp * std::cos(x / s.wavelen);
    }
  }
  return integrate_pde_1d_fields(spec, grid, std::move(u0), std::move(v0),
                                 t_end, dt_out, opts);
}

std::vector<SweepSummary> sweep(const std::vector<ModelSpec>& specs,
                                const Scenario& scenario, int max_threads) {
  if (specs.empty()) throw DomainError("sweep needs at least one spec");
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers = std::max(
      1, std::min({max_threads, hw > 0 ? hw : 1,
                   static_cast<int>(specs.size())}));

  std::vector<SweepSummary> results(specs.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= specs.size()) return;
      SweepSummary& out = results[idx];
      try {
        const ModelSpec& spec = specs[idx];
        const EquilibriumReport eq = find_equilibrium(spec);
        SpectrumConfig scfg{Interval{scenario.grid.length},
                            scenario.max_modes};
        const TuringReport turing = classify_pde_stability(spec, eq, scfg);
        if (turing.d_crit) out.d_crit = *turing.d_crit;
        out.verdict = turing.verdict;

        const Trajectory traj =
            integrate_pde_1d(spec, scenario.grid, scenario.init,
                             scenario.t_end, scenario.dt_out);
        out.final_dist = traj.diagnostics.back().dist_sup;
        const double d0 = traj.diagnostics.front().dist_sup;
        double growth = 0.0;
        for (const auto& diag : traj.diagnostics) {
          if (d0 > 0.0) growth = std::max(growth, diag.dist_sup / d0);
        }
        out.growth_factor = growth;
        out.consistent = (turing.verdict == StabilityVerdict::Unstable)
                             ? growth >= 10.0
                             : out.final_dist < 1e-2;
        out.status = "ok";
      } catch (const std::exception& err) {
        out.status = err.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace rdstab
