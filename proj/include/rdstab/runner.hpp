#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rdstab/config.hpp"

namespace rdstab {

inline constexpr const char* kToolVersion = "0.1.0";

// Full analysis pipeline: hypotheses, equilibrium, Turing classification,
// invariant rectangle, bounds, global verdict. Prints one JSON document (or a
// text summary) to out. Returns 0, or 2 when the diffusion classification
// precondition failed, or 3 on a truncation error (the document is still
// printed with the failing section nulled).
int cmd_analyze(const RunConfig& cfg, bool json_output, std::ostream& out);

// Solution bounds for the given initial ranges ("min:max"). Prints a
// BoundsReport as JSON or text.
int cmd_bounds(const RunConfig& cfg, std::pair<double, double> u0_range,
               std::pair<double, double> v0_range, bool json_output,
               std::ostream& out);

// Runs the configured scenario and writes trajectory.csv, diagnostics.csv,
// run.json (and plot.svg when requested) into cfg.out_dir.
int cmd_simulate(const RunConfig& cfg, bool svg_output, std::ostream& out);

// One simulation + classification per value of the swept model parameter;
// writes sweep.csv into cfg.out_dir. Per-row failures land in the status
// column without aborting the batch.
int cmd_sweep(const RunConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::ostream& out);

// Maps the error taxonomy to process exit codes (LoadError 1, DomainError/
// PreconditionError/NonFiniteError/SublinearityError 2, RootError/
// MultiRootError/TruncationError 3, BlowupError/StepError 4).
int run_guarded(const std::function<int()>& body, std::ostream& err);

// Worker-thread cap for sweeps: RDSTAB_THREADS when set, else the hardware
// concurrency.
int sweep_thread_cap();

}  // namespace rdstab
