#pragma once

#include "ieq/diagnostics.hpp"
#include "ieq/field.hpp"
#include "ieq/scheme.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace ieq {

enum class InitialKind { CosineSum, TanhProfile, SeededNoise };

std::string_view to_string(InitialKind kind);

struct InitialCondition {
  InitialKind kind = InitialKind::CosineSum;
  double amplitude = 0.1;
  double mean = 0.0;
  std::optional<std::uint64_t> seed;
};

struct GridSpec {
  int dim = 2;
  int n0 = 64;
  int n1 = 64;
  double length0 = 6.283185307179586;
  double length1 = 6.283185307179586;

  Grid make() const;
};

/// Everything a command needs, read from a flat `key = value` file.
///
///   equation = cahn-hilliard | allen-cahn
///   grid.dim, grid.n1, grid.n2, grid.l1, grid.l2   (grid.n / grid.l set every axis)
///   potential.kind = double-well | flory-huggins | zero | double-well-lagrange
///   potential.theta, potential.sigma, potential.A, potential.B
///   physics.M, physics.epsilon
///   time.dt, time.T, time.snapshot_every
///   pcg.rel_tol, pcg.abs_tol, pcg.max_iters
///   ic.kind = cosine-sum | tanh-profile | seeded-noise
///   ic.amplitude, ic.mean, ic.seed
///   output_dir
///
/// Lengths accept a trailing `pi` multiplier (`2pi`, `2*pi`). `#` starts a comment.
struct RunConfig {
  Equation equation = Equation::CahnHilliard;
  GridSpec grid;
  SchemeConfig scheme;
  double final_time = 1.0;
  int snapshot_every = 1;
  InitialCondition ic;
  std::string output_dir = "out";

  /// Full validation for time-stepping commands; throws ConfigError.
  void validate() const;
};

/// Throws ConfigError naming the line and key on malformed input. Potential
/// parameters are not range-checked here (see PotentialSpec::validate).
RunConfig parse_run_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

/// Serializes every key so that parse_run_config(format_run_config(c)) == c.
std::string format_run_config(const RunConfig& cfg);

/// Parses a comma-separated list of reals (e.g. `4e-3,2e-3`).
std::vector<double> parse_real_list(const std::string& text);

Field make_initial_condition(const InitialCondition& ic, const Grid& grid, double epsilon);

} // namespace ieq
