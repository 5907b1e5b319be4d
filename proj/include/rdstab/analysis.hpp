#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "rdstab/model.hpp"

namespace rdstab {

// Equilibrium (u*, v*) = (alpha, g(alpha)) with the reaction Jacobian
//   [[ f'(a)phi(a), -lambda*phi(a) ], [ sigma*g'(a)phi(a), -sigma*phi(a) ]]
// and the local ODE verdicts derived from trace/determinant.
struct EquilibriumReport {
  double alpha = 0.0;
  double u_star = 0.0;
  double v_star = 0.0;
  std::array<std::array<double, 2>, 2> jac{};
  double trace = 0.0;
  double det = 0.0;
  bool ode_stable = false;
  bool activator_inhibitor = false;  // F_u > 0 together with ode_stable
};

struct Interval {
  double length = 0.0;
};

struct Rectangle {
  double lx = 0.0;
  double ly = 0.0;
};

struct SpectrumConfig {
  std::variant<Interval, Rectangle> geometry;
  int max_modes = 64;
};

enum class StabilityVerdict { StableCase1, StableCase2, Unstable };

const char* to_string(StabilityVerdict verdict);

struct ModeThreshold {
  int index = 0;
  double lambda_i = 0.0;
  double d_tilde = 0.0;
};

struct ModeQuadratic {
  int index = 0;
  double p = 0.0;
  double q = 0.0;
};

struct TuringReport {
  double F0 = 0.0;                    // f'(alpha) * phi(alpha)
  std::optional<int> i_alpha;         // largest i with d1*lambda_i < F0
  std::vector<ModeThreshold> d_tilde; // thresholds for 1 <= i <= i_alpha
  std::optional<double> d_crit;       // min over d_tilde
  double ratio = 0.0;                 // d2 / sigma
  StabilityVerdict verdict = StabilityVerdict::StableCase1;
  std::optional<int> witness_mode;    // mode k with Q_k < 0 when Unstable
  std::vector<ModeQuadratic> Q;       // xi^2 + p_i xi + Q_i coefficients
  bool boundary_tie = false;          // ratio == d_crit exactly
};

// Locates alpha as the unique root of f - lambda*g on (0, delta) via a
// 1024-point sign scan followed by bisection. Throws RootError when no
// bracket exists and MultiRootError when the scan finds more than one.
EquilibriumReport find_equilibrium(const ModelSpec& spec);

// Neumann Laplacian eigenvalues, nondecreasing, lambda_0 = 0. Intervals give
// (i*pi/L)^2; rectangles the sorted multiset (i*pi/Lx)^2 + (j*pi/Ly)^2.
// Returns max_modes + 1 values.
std::vector<double> neumann_eigenvalues(const SpectrumConfig& cfg);

// Diffusion-driven (Turing) classification. Requires eq.ode_stable; when
// F0 <= 0 or d1*lambda_1 >= F0 every mode is damped and the verdict is
// StableCase1. Throws TruncationError if i_alpha is not resolved within
// max_modes.
TuringReport classify_pde_stability(const ModelSpec& spec,
                                    const EquilibriumReport& eq,
                                    const SpectrumConfig& cfg);

// True iff f'(u) < sigma at every point of a uniform interior grid of
// (0, delta): the hypothesis of the global ODE stability theorem.
bool check_global_ode(const ModelSpec& spec, int grid_size);

}  // namespace rdstab
