#include "rdstab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdstab/errors.hpp"
#include "rdstab/rootfind.hpp"

namespace rdstab {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

const char* to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::StableCase1: return "StableCase1";
    case StabilityVerdict::StableCase2: return "StableCase2";
    case StabilityVerdict::Unstable: return "Unstable";
  }
  return "?";
}

EquilibriumReport find_equilibrium(const ModelSpec& spec) {
  auto h = [&spec](double u) { return spec.f(u) - spec.lambda * spec.g(u); };
  const auto brackets = scan_brackets(h, 0.0, spec.delta, 1024);
  if (brackets.empty()) {
    throw RootError("no sign change of f - lambda*g on (0, delta)");
  }
  if (brackets.size() > 1) {
    throw MultiRootError("f - lambda*g changes sign " +
                         std::to_string(brackets.size()) +
                         " times on (0, delta); equilibrium not unique");
  }
  const double alpha =
      bisect(h, brackets[0].first, brackets[0].second, 0.0, 1e-12);

  EquilibriumReport eq;
  eq.alpha = alpha;
  eq.u_star = alpha;
  eq.v_star = spec.g(alpha);
  const double pa = spec.phi(alpha);
  const double fpa = spec.f.deriv(alpha);
  const double gpa = spec.g.deriv(alpha);
  eq.jac[0][0] = fpa * pa;
  eq.jac[0][1] = -spec.lambda * pa;
  eq.jac[1][0] = spec.sigma * gpa * pa;
  eq.jac[1][1] = -spec.sigma * pa;
  eq.trace = eq.jac[0][0] + eq.jac[1][1];
  eq.det = eq.jac[0][0] * eq.jac[1][1] - eq.jac[0][1] * eq.jac[1][0];
  eq.ode_stable = eq.trace < 0.0 && eq.det > 0.0;
  eq.activator_inhibitor = eq.jac[0][0] > 0.0 && eq.ode_stable;
  return eq;
}

std::vector<double> neumann_eigenvalues(const SpectrumConfig& cfg) {
  if (cfg.max_modes < 1) throw DomainError("max_modes must be >= 1");
  std::vector<double> evs;
  if (const auto* iv = std::get_if<Interval>(&cfg.geometry)) {
    if (!(iv->length > 0.0)) throw DomainError("interval length must be > 0");
    evs.reserve(cfg.max_modes + 1);
    for (int i = 0; i <= cfg.max_modes; ++i) {
      const double w = static_cast<double>(i) * kPi / iv->length;
      evs.push_back(w * w);
    }
  } else {
    const auto& rect = std::get<Rectangle>(cfg.geometry);
    if (!(rect.lx > 0.0) || !(rect.ly > 0.0)) {
      throw DomainError("rectangle sides must be > 0");
    }
    // lambda_{ij} is coordinate-wise increasing, so indices up to max_modes
    // in each direction always cover the first max_modes + 1 values.
    evs.reserve((cfg.max_modes + 1) * (cfg.max_modes + 1));
    for (int i = 0; i <= cfg.max_modes; ++i) {
      for (int j = 0; j <= cfg.max_modes; ++j) {
        const double wx = static_cast<double>(i) * kPi / rect.lx;
        const double wy = static_cast<double>(j) * kPi / rect.ly;
        evs.push_back(wx * wx + wy * wy);
      }
    }
    std::sort(evs.begin(), evs.end());
    evs.resize(cfg.max_modes + 1);
  }
  return evs;
}

TuringReport classify_pde_stability(const ModelSpec& spec,
                                    const EquilibriumReport& eq,
                                    const SpectrumConfig& cfg) {
  if (!eq.ode_stable) {
    throw PreconditionError(
        "equilibrium is not ODE-stable; diffusion-driven classification "
        "requires trace < 0 and det > 0");
  }
  const auto evs = neumann_eigenvalues(cfg);
  const double pa = spec.phi(eq.alpha);
  const double fpa = spec.f.deriv(eq.alpha);
  const double gpa = spec.g.deriv(eq.alpha);
  const double F0 = fpa * pa;
  const double coupling = pa * (spec.lambda * gpa - fpa);  // lg' - f' block
  const double ratio = spec.d2 / spec.sigma;

  TuringReport rep;
  rep.F0 = F0;
  rep.ratio = ratio;

  // Q_i in the form sigma * [ ratio*l_i*(l_i*d1 - F0) + phi(a)*(l_i*d1 +
  // phi(a)*(lambda*g'(a) - f'(a))) ]; p_i = (d1+d2)*l_i + (sigma-f'(a))phi(a).
  auto p_of = [&](double l) {
    return (spec.d1 + spec.d2) * l + (spec.sigma - fpa) * pa;
  };
  auto q_of = [&](double l) {
    return spec.sigma * (ratio * l * (l * spec.d1 - F0) + pa * (l * spec.d1 + pa * (spec.lambda * gpa - fpa)));
  };

  // Determine i_alpha: largest i with d1*lambda_i < F0. F0 <= 0 or
  // d1*lambda_1 >= F0 leaves no mode in the window (case 1).
  int i_alpha = 0;
  if (F0 > 0.0 && spec.d1 * evs[1] < F0) {
    if (spec.d1 * evs[cfg.max_modes] < F0) {
      throw TruncationError(
          "d1*lambda_max < F0: i_alpha not resolved within max_modes = " +
          std::to_string(cfg.max_modes) + "; raise max_modes");
    }
    for (int i = 1; i <= cfg.max_modes; ++i) {
      if (spec.d1 * evs[i] < F0) i_alpha = i;
      else break;
    }
    rep.i_alpha = i_alpha;
  }

  if (rep.i_alpha) {
    double d_crit = std::numeric_limits<double>::infinity();
    int k_min = 0;
    for (int i = 1; i <= i_alpha; ++i) {
      const double l = evs[i];
      const double dt = pa * (l * spec.d1 + coupling) / (l * (F0 - l * spec.d1));
      rep.d_tilde.push_back({i, l, dt});
      if (dt < d_crit) {
        d_crit = dt;
        k_min = i;
      }
    }
    rep.d_crit = d_crit;
    if (ratio > d_crit) {
      rep.verdict = StabilityVerdict::Unstable;
      rep.witness_mode = k_min;
    } else {
      rep.verdict = StabilityVerdict::StableCase2;
      rep.boundary_tie = ratio == d_crit;
    }
  } else {
    rep.verdict = StabilityVerdict::StableCase1;
  }

  // Diagnostic quadratic coefficients for i <= i_alpha + 4.
  const int q_hi = std::min(cfg.max_modes, i_alpha + 4);
  for (int i = 0; i <= q_hi; ++i) {
    rep.Q.push_back({i, p_of(evs[i]), q_of(evs[i])});
  }
  return rep;
}

bool check_global_ode(const ModelSpec& spec, int grid_size) {
  if (grid_size < 64) throw DomainError("grid_size must be >= 64");
  for (int k = 1; k <= grid_size; ++k) {
    const double u = spec.delta * static_cast<double>(k) /
                     static_cast<double>(grid_size + 1);
    const double fp = spec.f.deriv(u);
    if (!std::isfinite(fp)) {
      throw NonFiniteError("f' is non-finite at u = " + std::to_string(u));
    }
    if (!(fp < spec.sigma)) return false;
  }
  return true;
}

}  // namespace rdstab
