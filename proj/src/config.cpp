#include "rdstab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rdstab/errors.hpp"

namespace rdstab {

namespace {

std::string trim(const std::string& s) {
  size_t lo = 0;
  size_t hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(x)) {
      throw std::invalid_argument(value);
    }
    return x;
  } catch (const std::exception&) {
    throw LoadError("config key '" + key + "': cannot parse number '" +
                    value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_number(key, value);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) {
    throw LoadError("config key '" + key + "': expected an integer, got '" +
                    value + "'");
  }
  return i;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& path) {
  RunConfig cfg;
  cfg.source_path = path;
  cfg.raw_text = text;
  bool preset_seen = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw LoadError("config line " + std::to_string(line_no) +
                      ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw LoadError("config line " + std::to_string(line_no) +
                      ": empty key or value");
    }

    if (key == "preset") {
      if (value == "lengyel_epstein") cfg.preset = PresetKind::LengyelEpstein;
      else if (value == "fitzhugh_nagumo") cfg.preset = PresetKind::FitzHughNagumo;
      else throw LoadError("unknown preset '" + value + "'");
      preset_seen = true;
    } else if (key == "a") cfg.a = parse_number(key, value);
    else if (key == "mu") cfg.mu = parse_number(key, value);
    else if (key == "beta") cfg.beta = parse_number(key, value);
    else if (key == "eps") cfg.eps = parse_number(key, value);
    else if (key == "gamma") cfg.gamma = parse_number(key, value);
    else if (key == "stim") cfg.stim = parse_number(key, value);
    else if (key == "lambda") cfg.lambda = parse_number(key, value);
    else if (key == "sigma") cfg.sigma = parse_number(key, value);
    else if (key == "d1") cfg.d1 = parse_number(key, value);
    else if (key == "d2") cfg.d2 = parse_number(key, value);
    else if (key == "mode") {
      if (value != "ode" && value != "pde") {
        throw LoadError("mode must be 'ode' or 'pde', got '" + value + "'");
      }
      cfg.mode = value;
    } else if (key == "L") cfg.L = parse_number(key, value);
    else if (key == "n") cfg.n = parse_int(key, value);
    else if (key == "t_end") cfg.t_end = parse_number(key, value);
    else if (key == "dt_out") cfg.dt_out = parse_number(key, value);
    else if (key == "init") {
      if (value != "constant" && value != "sine") {
        throw LoadError("init must be 'constant' or 'sine', got '" + value +
                        "'");
      }
      cfg.init = value;
    } else if (key == "u0") cfg.u0 = parse_number(key, value);
    else if (key == "v0") cfg.v0 = parse_number(key, value);
    else if (key == "amp") cfg.amp = parse_number(key, value);
    else if (key == "wavelen") cfg.wavelen = parse_number(key, value);
    else if (key == "modes") cfg.modes = parse_int(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_int(key, value));
    else throw LoadError("unknown config key '" + key + "'");
  }
  if (!preset_seen) throw LoadError("config is missing the 'preset' key");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

ModelSpec build_spec(const RunConfig& cfg) {
  if (cfg.preset == PresetKind::LengyelEpstein) {
    // Benchmark instance: a^2 = 125/4, mu = 1, lambda = 4, sigma = 0.5,
    // d1 = 1, d2 = sigma (the two auxiliary constants of the original
    // four-parameter form both set to 1).
    const double a = cfg.a.value_or(5.5901699437494745);
    const double mu = cfg.mu.value_or(1.0);
    const double lambda = cfg.lambda.value_or(4.0);
    const double sigma = cfg.sigma.value_or(0.5);
    const double d1 = cfg.d1.value_or(1.0);
    const double d2 = cfg.d2.value_or(sigma);
    return preset_lengyel_epstein(a, mu, lambda, sigma, d1, d2);
  }
  // Benchmark instance: beta = 0.139, eps = 0.008, gamma = 2.54, stim = 2.
  const double beta = cfg.beta.value_or(0.139);
  const double eps = cfg.eps.value_or(0.008);
  const double gamma = cfg.gamma.value_or(2.54);
  const double stim = cfg.stim.value_or(2.0);
  const double d1 = cfg.d1.value_or(1.0);
  const double d2 = cfg.d2.value_or(1.0);
  return preset_fitzhugh_nagumo(beta, eps, gamma, stim, d1, d2);
}

Decomposition build_decomposition(const RunConfig& cfg, double scan_hint) {
  const ModelSpec spec = build_spec(cfg);
  const double hi = std::max(spec.delta, scan_hint);
  if (cfg.preset == PresetKind::LengyelEpstein) {
    const double a = cfg.a.value_or(5.5901699437494745);
    const double mu = cfg.mu.value_or(1.0);
    return decompose_lengyel_epstein(a, mu, hi);
  }
  const double beta = cfg.beta.value_or(0.139);
  const double gamma = cfg.gamma.value_or(2.54);
  const double stim = cfg.stim.value_or(2.0);
  return decompose_fitzhugh_nagumo(beta, gamma, stim, hi);
}

std::pair<double, double> default_init(const RunConfig& cfg) {
  if (cfg.preset == PresetKind::LengyelEpstein) return {4.0, 3.0};
  return {0.5, 1.2};
}

std::string config_hash(const RunConfig& cfg) {
  // FNV-1a, 64-bit.
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : cfg.raw_text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rdstab
