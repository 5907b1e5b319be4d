#pragma once

#include <optional>
#include <string>
#include <utility>

#include "rdstab/bounds.hpp"
#include "rdstab/model.hpp"

namespace rdstab {

enum class PresetKind { LengyelEpstein, FitzHughNagumo };

// Flat key = value configuration. Unset numeric fields keep the per-preset
// defaults (the benchmark instances the tool reproduces out of the box).
struct RunConfig {
  PresetKind preset = PresetKind::LengyelEpstein;

  // lengyel_epstein parameters
  std::optional<double> a, mu;
  // fitzhugh_nagumo parameters
  std::optional<double> beta, eps, gamma, stim;
  // shared
  std::optional<double> lambda, sigma, d1, d2;

  // scenario
  std::string mode = "pde";          // ode | pde
  double L = 100.0;
  int n = 256;
  double t_end = 400.0;
  double dt_out = 1.0;
  std::string init = "sine";         // constant | sine
  std::optional<double> u0, v0;      // default: preset benchmark values
  double amp = 0.2;
  double wavelen = 5.0;
  int modes = 64;
  std::string out_dir;
  unsigned long seed = 0;            // reserved; dynamics are deterministic

  std::string source_path;           // file this config was loaded from
  std::string raw_text;              // exact bytes, for the manifest hash
};

// Parses a UTF-8 `key = value` file with `#` comments. Unknown keys, missing
// preset, or malformed numbers raise LoadError.
RunConfig load_config(const std::string& path);

// Same parser over an in-memory string (used by tests and by load_config).
RunConfig parse_config(const std::string& text, const std::string& path);

// Instantiates the preset with defaults filled in.
ModelSpec build_spec(const RunConfig& cfg);

// The matching analytic decomposition, scanned up to max(delta, u0, scan_hint).
Decomposition build_decomposition(const RunConfig& cfg, double scan_hint);

// Benchmark initial data for the preset ((4, 3) resp. (0.5, 1.2)).
std::pair<double, double> default_init(const RunConfig& cfg);

// FNV-1a 64-bit hash of the raw config bytes, formatted "fnv1a64:<hex>".
std::string config_hash(const RunConfig& cfg);

}  // namespace rdstab
