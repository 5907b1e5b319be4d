// Acceptance gate: ten end-to-end criteria covering equilibria, hypothesis
// sharpness, relaxation in both integrators, Lyapunov descent, threshold
// cross-checks against an independent oracle, witness-mode growth, rectangle
// trapping, derivative identities, and the spatial convergence order. Each
// criterion prints exactly one PASS/FAIL line; the exit status is the number
// of failures. All tolerances and budgets are pinned here, in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rdstab/analysis.hpp"
#include "rdstab/errors.hpp"
#include "rdstab/lyapunov.hpp"
#include "rdstab/model.hpp"
#include "rdstab/sim.hpp"

using namespace rdstab;

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kLeA = 5.5901699437494745;  // a^2 = 125/4

using Clock = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs one criterion body; the body returns pass/fail and appends measured
// numbers to the detail stream. Exceptions count as failures.
void criterion(int number, const char* label,
               const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << " exception: " << e.what();
  }
  const double secs = seconds_since(t0);
  std::printf("%s criterion %d: %s [%.2fs]%s\n", ok ? "PASS" : "FAIL", number,
              label, secs, detail.str().c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

ModelSpec le_benchmark() {
  return preset_lengyel_epstein(kLeA, 1.0, 4.0, 0.5, 1.0, 0.5);
}

ModelSpec fhn_benchmark() {
  return preset_fitzhugh_nagumo(0.139, 0.008, 2.54, 2.0, 1.0, 1.0);
}

// Independent mode quadratic: the determinant of the linearized mode matrix
//   [[F0 - lam*d1, F1], [sigma*G0, sigma*G1 - lam*d2]]
// expanded by hand, evaluated without any library classification code.
double oracle_q(const ModelSpec& spec, double alpha, double lam, double d2) {
  const double phi = spec.phi(alpha);
  const double f0 = spec.f.deriv(alpha) * phi;
  const double f1 = -spec.lambda * phi;
  const double g0 = spec.g.deriv(alpha) * phi;
  const double g1 = -phi;
  return lam * lam * spec.d1 * d2 + spec.sigma * f0 * g1 - lam * f0 * d2 -
         spec.sigma * lam * g1 * spec.d1 - spec.sigma * f1 * g0;
}

// Root of oracle_q in the rescaled diffusion rho = d2/sigma, by bracketed
// bisection. The quadratic is strictly decreasing in rho for the admissible
// modes, so the root is unique.
std::optional<double> oracle_threshold(const ModelSpec& spec, double alpha,
                                       double lam) {
  const double sigma = spec.sigma;
  auto q_of = [&](double rho) {
    return oracle_q(spec, alpha, lam, sigma * rho);
  };
  double lo = 1e-12;
  if (q_of(lo) <= 0.0) return std::nullopt;
  double hi = 1.0;
  for (int k = 0; k < 200 && q_of(hi) > 0.0; ++k) hi *= 2.0;
  if (q_of(hi) > 0.0) return std::nullopt;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (q_of(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

int main() {
  // State handed from criterion 4 to criterion 5.
  Grid1D pde_grid;
  std::optional<Trajectory> le_pde, fhn_pde;

  criterion(1, "benchmark equilibria", [](std::ostringstream& note) {
    const auto t0 = Clock::now();
    const EquilibriumReport le = find_equilibrium(le_benchmark());
    const ModelSpec fhn_spec = fhn_benchmark();
    const EquilibriumReport fhn = find_equilibrium(fhn_spec);
    note << " le (" << le.u_star << ", " << le.v_star << "), fhn delta "
         << fhn_spec.delta << " (" << fhn.u_star << ", " << fhn.v_star << ")";
    return std::fabs(le.u_star - 1.118) <= 1e-3 &&
           std::fabs(le.v_star - 2.2499) <= 1e-3 &&
           std::fabs(fhn_spec.delta - 1.7282) <= 1e-3 &&
           std::fabs(fhn.u_star - 1.5928) <= 1e-3 &&
           std::fabs(fhn.v_star - 0.6273) <= 1e-3 && seconds_since(t0) < 1.0;
  });

  criterion(2, "secant monotonicity is sharp at the benchmark",
            [](std::ostringstream& note) {
    const auto t0 = Clock::now();
    const ModelSpec base = le_benchmark();
    const EquilibriumReport eq_base = find_equilibrium(base);
    const ConditionEntry con6_base =
        check_hypotheses(base, eq_base.alpha, 4096).con6;

    const ModelSpec bumped = preset_lengyel_epstein(
        std::sqrt(125.0 / 4.0 + 0.5), 1.0, 4.0, 0.5, 1.0, 0.5);
    const EquilibriumReport eq_bump = find_equilibrium(bumped);
    const ConditionEntry con6_bump =
        check_hypotheses(bumped, eq_bump.alpha, 4096).con6;
    note << " base margin " << con6_base.margin << ", bumped margin "
         << con6_bump.margin;
    if (con6_bump.witness) note << " at u = " << *con6_bump.witness;

    return con6_base.holds && !con6_bump.holds &&
           con6_bump.witness.has_value() &&
           *con6_bump.witness > eq_bump.alpha &&
           *con6_bump.witness < bumped.delta && seconds_since(t0) < 1.0;
  });

  criterion(3, "ode relaxation to the equilibrium",
            [](std::ostringstream& note) {
    const auto t_le = Clock::now();
    const Trajectory le = integrate_ode(le_benchmark(), 4.0, 3.0, 400.0, 1.0);
    const double le_secs = seconds_since(t_le);
    const auto t_fhn = Clock::now();
    const Trajectory fhn =
        integrate_ode(fhn_benchmark(), 0.5, 1.2, 400.0, 1.0);
    const double fhn_secs = seconds_since(t_fhn);
    const double dle = le.diagnostics.back().dist_sup;
    const double dfhn = fhn.diagnostics.back().dist_sup;
    note << " le final " << dle << " (" << le_secs << "s), fhn final " << dfhn
         << " (" << fhn_secs << "s)";
    return dle < 1e-2 && dfhn < 1e-2 && le_secs < 10.0 && fhn_secs < 10.0;
  });

  criterion(4, "pde relaxation to the uniform state",
            [&](std::ostringstream& note) {
    pde_grid = make_grid(100.0, 256);
    const auto t_le = Clock::now();
    le_pde = integrate_pde_1d(le_benchmark(), pde_grid,
                              SinePerturbedInit{4.0, 3.0, 0.2, 5.0}, 400.0,
                              1.0);
    const double le_secs = seconds_since(t_le);
    const auto t_fhn = Clock::now();
    fhn_pde = integrate_pde_1d(fhn_benchmark(), pde_grid,
                               SinePerturbedInit{0.5, 1.2, 0.2, 5.0}, 400.0,
                               1.0);
    const double fhn_secs = seconds_since(t_fhn);
    const double dle = le_pde->diagnostics.back().dist_sup;
    const double dfhn = fhn_pde->diagnostics.back().dist_sup;
    note << " le final " << dle << " (" << le_secs << "s), fhn final " << dfhn
         << " (" << fhn_secs << "s)";
    return dle < 1e-2 && dfhn < 1e-2 && le_secs < 60.0 && fhn_secs < 60.0;
  });

  criterion(5, "lyapunov descent along both pde runs",
            [&](std::ostringstream& note) {
    if (!le_pde || !fhn_pde) {
      note << " criterion 4 left no trajectories";
      return false;
    }
    bool ok = true;
    const struct {
      const char* name;
      ModelSpec spec;
      Trajectory* traj;
    } runs[] = {{"le", le_benchmark(), &*le_pde},
                {"fhn", fhn_benchmark(), &*fhn_pde}};
    for (const auto& run : runs) {
      const EquilibriumReport eq = find_equilibrium(run.spec);
      fill_lyapunov(*run.traj, run.spec, eq, &pde_grid);
      const auto& diags = run.traj->diagnostics;
      const double v0 = diags.front().lyapunov_v;
      bool monotone = v0 > 0.0;
      for (size_t k = 1; k < diags.size(); ++k) {
        monotone = monotone &&
                   diags[k].lyapunov_v <= diags[k - 1].lyapunov_v + 1e-6 * v0;
      }
      const bool settled = diags.back().lyapunov_v < 1e-3 * v0;
      note << " " << run.name << " V0 " << v0 << " final "
           << diags.back().lyapunov_v << (monotone ? "" : " NON-MONOTONE");
      ok = ok && monotone && settled;
    }
    return ok;
  });

  criterion(6, "thresholds and verdicts agree with an independent oracle",
            [](std::ostringstream& note) {
    const auto t0 = Clock::now();
    std::mt19937 rng(20250819u);
    std::uniform_real_distribution<double> draw_a(6.0, 14.0);
    std::uniform_real_distribution<double> draw_mu(0.7, 1.6);
    std::uniform_real_distribution<double> draw_lambda(1.0, 6.0);
    std::uniform_real_distribution<double> draw_sigma(0.05, 0.8);
    std::uniform_real_distribution<double> draw_d1(0.3, 3.0);
    std::uniform_real_distribution<double> draw_len(20.0, 120.0);
    std::uniform_real_distribution<double> draw_mult(0.2, 2.5);

    int accepted = 0;
    double worst_gap = 0.0;
    int checked_thresholds = 0;
    for (int iter = 0; iter < 100000 && accepted < 50; ++iter) {
      const double a = draw_a(rng);
      const double mu = draw_mu(rng);
      const double lambda = draw_lambda(rng);
      const double sigma = draw_sigma(rng);
      const double d1 = draw_d1(rng);
      const double length = draw_len(rng);
      const double mult = draw_mult(rng);

      // Admissibility: stable kinetics (f'(alpha) < sigma, positive
      // determinant) with a genuine activator (f'(alpha) > 0). f'(u) =
      // -a/u^2 + a - 2u for this family.
      const double alpha = a / (mu + lambda);
      const double fp = -a / (alpha * alpha) + a - 2.0 * mu * alpha;
      if (!(fp > 0.0)) continue;
      if (!(fp < sigma)) continue;
      if (!(fp < 2.0 * lambda * alpha)) continue;
      if (std::fabs(mult - 1.0) < 1e-3) continue;  // avoid boundary ties

      const SpectrumConfig scfg{Interval{length}, 200};
      const ModelSpec probe =
          preset_lengyel_epstein(a, mu, lambda, sigma, d1, sigma);
      const EquilibriumReport eq = find_equilibrium(probe);
      const TuringReport rep = classify_pde_stability(probe, eq, scfg);
      if (!rep.d_crit) continue;  // geometry admits no unstable mode

      for (const ModeThreshold& th : rep.d_tilde) {
        const auto root = oracle_threshold(probe, eq.alpha, th.lambda_i);
        if (!root) {
          note << " no oracle root for mode " << th.index;
          return false;
        }
        const double gap = std::fabs(th.d_tilde - *root);
        worst_gap = std::max(worst_gap,
                             gap / std::max(1.0, std::fabs(th.d_tilde)));
        ++checked_thresholds;
        if (gap > 1e-9 * std::max(1.0, std::fabs(th.d_tilde))) {
          note << " threshold mismatch at mode " << th.index << ": "
               << th.d_tilde << " vs " << *root;
          return false;
        }
      }

      const double d2 = sigma * *rep.d_crit * mult;
      const ModelSpec spec =
          preset_lengyel_epstein(a, mu, lambda, sigma, d1, d2);
      const EquilibriumReport eq2 = find_equilibrium(spec);
      const TuringReport verdict_rep = classify_pde_stability(spec, eq2, scfg);

      double min_q = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 200; ++i) {
        const double lam = (i * kPi / length) * (i * kPi / length);
        min_q = std::min(min_q, oracle_q(spec, eq2.alpha, lam, d2));
      }
      const StabilityVerdict expected = min_q < 0.0
                                            ? StabilityVerdict::Unstable
                                            : StabilityVerdict::StableCase2;
      if (verdict_rep.verdict != expected) {
        note << " verdict mismatch at sample " << accepted << ": got "
             << to_string(verdict_rep.verdict) << ", oracle min Q " << min_q;
        return false;
      }
      ++accepted;
    }
    note << " " << accepted << " samples, " << checked_thresholds
         << " thresholds, worst rel gap " << worst_gap;
    return accepted == 50 && seconds_since(t0) < 5.0;
  });

  criterion(7, "witness-mode growth at twice the critical diffusion",
            [](std::ostringstream& note) {
    const auto t0 = Clock::now();
    const double sigma = 4.0;
    const ModelSpec probe =
        preset_lengyel_epstein(10.0, 1.0, 4.0, sigma, 1.0, sigma);
    const EquilibriumReport eq = find_equilibrium(probe);
    const SpectrumConfig scfg{Interval{100.0}, 64};
    const TuringReport base = classify_pde_stability(probe, eq, scfg);
    if (!base.d_crit) {
      note << " no critical diffusion on this instance";
      return false;
    }
    const double d2 = 2.0 * sigma * *base.d_crit;
    const ModelSpec spec =
        preset_lengyel_epstein(10.0, 1.0, 4.0, sigma, 1.0, d2);
    const TuringReport rep = classify_pde_stability(spec, eq, scfg);
    if (rep.verdict != StabilityVerdict::Unstable || !rep.witness_mode) {
      note << " expected an unstable verdict with a witness mode";
      return false;
    }
    const int k = *rep.witness_mode;
    double pk = 0.0, qk = 0.0;
    for (const ModeQuadratic& e : rep.Q) {
      if (e.index == k) {
        pk = e.p;
        qk = e.q;
      }
    }
    // Positive root of xi^2 + p_k xi + q_k = 0 (q_k < 0 guarantees one).
    const double xi = (-pk + std::sqrt(pk * pk - 4.0 * qk)) / 2.0;

    const Grid1D grid = make_grid(100.0, 256);
    const double amp0 = 1e-4;
    std::vector<double> u(grid.n), v(grid.n);
    for (int j = 0; j < grid.n; ++j) {
      u[j] = eq.u_star + amp0 * std::cos(k * kPi * grid.nodes[j] / 100.0);
      v[j] = eq.v_star;
    }
    const Trajectory traj =
        integrate_pde_1d_fields(spec, grid, u, v, 40.0, 0.5);

    // Trapezoid projection of u - u* onto the witness eigenfunction.
    const auto amplitude = [&](size_t s) {
      double acc = 0.0;
      for (int j = 0; j < grid.n; ++j) {
        const double w = (j == 0 || j == grid.n - 1) ? 0.5 : 1.0;
        acc += w * (traj.u_fields[s][j] - eq.u_star) *
               std::cos(k * kPi * grid.nodes[j] / 100.0);
      }
      return std::fabs(acc * grid.dx * 2.0 / 100.0);
    };
    double peak = 0.0;
    for (size_t s = 0; s < traj.times.size(); ++s) {
      peak = std::max(peak, amplitude(s));
    }
    // Least-squares slope of ln(amplitude) inside the linear-growth window.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (size_t s = 0; s < traj.times.size(); ++s) {
      const double av = amplitude(s);
      if (av >= 3e-4 && av <= 3e-3) {
        const double x = traj.times[s];
        const double y = std::log(av);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
      }
    }
    if (m < 3) {
      note << " growth window too short (" << m << " snapshots)";
      return false;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    note << " mode " << k << ", growth " << peak / amp0 << "x, rate " << slope
         << " vs " << xi;
    return peak / amp0 >= 10.0 && std::fabs(slope - xi) <= 0.1 * xi &&
           seconds_since(t0) < 60.0;
  });

  criterion(8, "random fields inside the rectangle are trapped",
            [](std::ostringstream& note) {
    const ModelSpec spec = le_benchmark();
    const double delta = spec.delta;
    const double g_delta = spec.g(delta);
    const Grid1D grid = make_grid(50.0, 64);
    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> u_base(0.1 * delta, 0.9 * delta);
    std::uniform_real_distribution<double> v_base(0.1 * g_delta,
                                                  0.9 * g_delta);

    // Smooth Neumann-compatible field: base value plus four cosine modes
    // whose total amplitude keeps the field strictly inside the rectangle.
    const auto random_field = [&](double base, double hi) {
      double coeff[4];
      double total = 0.0;
      for (double& c : coeff) {
        c = unit(rng);
        total += std::fabs(c);
      }
      const double budget = 0.8 * std::min(base, hi - base) / total;
      std::vector<double> field(grid.n, base);
      for (int mode = 1; mode <= 4; ++mode) {
        for (int j = 0; j < grid.n; ++j) {
          field[j] += budget * coeff[mode - 1] *
                      std::cos(mode * kPi * grid.nodes[j] / grid.length);
        }
      }
      return field;
    };

    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> u0 = random_field(u_base(rng), delta);
      const std::vector<double> v0 = random_field(v_base(rng), g_delta);
      const Trajectory traj =
          integrate_pde_1d_fields(spec, grid, u0, v0, 10.0, 0.5);
      for (size_t s = 0; s < traj.times.size(); ++s) {
        for (int j = 0; j < grid.n; ++j) {
          worst = std::max({worst, -traj.u_fields[s][j],
                            traj.u_fields[s][j] - delta, -traj.v_fields[s][j],
                            traj.v_fields[s][j] - g_delta});
        }
      }
    }
    note << " worst excursion " << worst;
    return worst <= 1e-6;
  });

  criterion(9, "derivative and potential identities",
            [](std::ostringstream& note) {
    bool ok = true;
    double worst_jac = 0.0;
    for (const ModelSpec& spec : {le_benchmark(), fhn_benchmark()}) {
      const EquilibriumReport eq = find_equilibrium(spec);
      const double hu = 1e-6 * std::max(1.0, std::fabs(eq.u_star));
      const double hv = 1e-6 * std::max(1.0, std::fabs(eq.v_star));
      const double fd[2][2] = {
          {(spec.reaction_u(eq.u_star + hu, eq.v_star) -
            spec.reaction_u(eq.u_star - hu, eq.v_star)) /
               (2.0 * hu),
           (spec.reaction_u(eq.u_star, eq.v_star + hv) -
            spec.reaction_u(eq.u_star, eq.v_star - hv)) /
               (2.0 * hv)},
          {(spec.reaction_v(eq.u_star + hu, eq.v_star) -
            spec.reaction_v(eq.u_star - hu, eq.v_star)) /
               (2.0 * hu),
           (spec.reaction_v(eq.u_star, eq.v_star + hv) -
            spec.reaction_v(eq.u_star, eq.v_star - hv)) /
               (2.0 * hv)}};
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          const double rel = std::fabs(fd[r][c] - eq.jac[r][c]) /
                             std::max(1.0, std::fabs(eq.jac[r][c]));
          worst_jac = std::max(worst_jac, rel);
          ok = ok && rel <= 1e-5;
        }
      }
      // H must be nonnegative across the admissible interval.
      for (int k = 1; k <= 512; ++k) {
        const double u = spec.delta * k / 513.0;
        ok = ok && eval_H(spec, eq.alpha, u) >= -1e-12;
      }
    }

    // The linear-recovery preset has an elementary potential.
    const ModelSpec fhn = fhn_benchmark();
    const EquilibriumReport eq = find_equilibrium(fhn);
    double worst_h = 0.0;
    for (int k = 1; k <= 512; ++k) {
      const double u = fhn.delta * k / 513.0;
      const double want = (u - eq.alpha) * (u - eq.alpha) / (2.0 * 2.54);
      const double diff = std::fabs(eval_H(fhn, eq.alpha, u) - want);
      worst_h = std::max(worst_h, diff / (1.0 + want));
      ok = ok && diff <= 1e-10 * (1.0 + want);
    }
    note << " worst jacobian rel err " << worst_jac << ", worst H rel err "
         << worst_h;
    return ok;
  });

  criterion(10, "spatial error contracts at second order",
            [](std::ostringstream& note) {
    const ModelSpec spec = le_benchmark();
    SimOptions opts;
    opts.dt_override = 5e-4;  // shared step isolates the spatial error
    const SinePerturbedInit init{4.0, 3.0, 0.2, 5.0};
    const auto run = [&](int n) {
      return integrate_pde_1d(spec, make_grid(100.0, n), init, 10.0, 10.0,
                              opts);
    };
    const Trajectory ref = run(1025);
    const auto sup_error = [&](const Trajectory& t, int n) {
      const int stride = 1024 / (n - 1);
      double e = 0.0;
      for (int j = 0; j < n; ++j) {
        e = std::max(e, std::fabs(t.u_fields.back()[j] -
                                  ref.u_fields.back()[j * stride]));
        e = std::max(e, std::fabs(t.v_fields.back()[j] -
                                  ref.v_fields.back()[j * stride]));
      }
      return e;
    };
    const double e65 = sup_error(run(65), 65);
    const double e129 = sup_error(run(129), 129);
    const double e257 = sup_error(run(257), 257);
    const double r1 = e65 / e129;
    const double r2 = e129 / e257;
    note << " errors " << e65 << " / " << e129 << " / " << e257
         << ", ratios " << r1 << ", " << r2;
    return r1 >= 3.0 && r1 <= 5.0 && r2 >= 3.0 && r2 <= 5.0;
  });

  std::printf("acceptance: %d/10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
