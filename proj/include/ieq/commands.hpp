#pragma once

#include "ieq/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ieq {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitFailure = 1,     // an assertion on the physics failed
  kExitConfigError = 2, // malformed configuration or arguments
  kExitSolverError = 3, // PCG failure
};

struct SimulateOptions {
  bool strict_energy = false;
};

/// Runs ceil(T/dt) steps, writing series.csv and snapshot_<step>.csv
/// (initial field and every snapshot_every steps) into cfg.output_dir.
int cmd_simulate(const RunConfig& cfg, const SimulateOptions& opts, std::ostream& log);

/// Refinement study over `dts` against a dt_ref reference. Writes
/// convergence.csv. With assert_order = 1 fails unless every defined rate
/// lies in [0.85, 1.15] and every fit has R^2 >= 0.98.
int cmd_converge(const RunConfig& cfg, const std::vector<double>& dts, double dt_ref,
                 std::optional<int> assert_order, std::ostream& log);

/// Runs `steps` steps for each dt and records the largest energy increase.
/// Writes sweep.csv; fails if any step exceeds its tolerance.
int cmd_stability_sweep(const RunConfig& cfg, const std::vector<double>& dts, int steps,
                        std::ostream& log);

/// Derivative consistency, lower bound, quadratization identity, knot
/// continuity (Flory-Huggins) and sampled Lipschitz checks on the potential.
int cmd_check_potential(const RunConfig& cfg, std::ostream& log);

} // namespace ieq
