#pragma once

// Shared fixtures: the two benchmark instances every suite exercises and one
// wider instance whose interval spectrum contains an unstable band.

#include "rdstab/model.hpp"

namespace rdstab::test {

// lengyel_epstein benchmark: a^2 = 125/4, mu = 1, lambda = 4, sigma = 0.5,
// d1 = 1, d2 = sigma. alpha = a/5, (u*, v*) = (alpha, 2.25).
inline constexpr double kLeA = 5.5901699437494745;

inline ModelSpec le_benchmark() {
  return preset_lengyel_epstein(kLeA, 1.0, 4.0, 0.5, 1.0, 0.5);
}

// fitzhugh_nagumo benchmark: beta = 0.139, eps = 0.008, gamma = 2.54,
// stim = 2, d1 = d2 = 1. delta ~ 1.72821, alpha ~ 1.59285.
inline ModelSpec fhn_benchmark() {
  return preset_fitzhugh_nagumo(0.139, 0.008, 2.54, 2.0, 1.0, 1.0);
}

// Wider lengyel_epstein instance a = 10, sigma = 4: alpha = 2, F0 = 1.4,
// and on the length-100 interval d_crit ~ 4.63646 with witness mode 26.
inline ModelSpec le_wide(double d2) {
  return preset_lengyel_epstein(10.0, 1.0, 4.0, 4.0, 1.0, d2);
}

inline constexpr double kLeWideDcrit = 4.6364626120523145;
inline constexpr int kLeWideWitness = 26;

}  // namespace rdstab::test
