#include "ieq/commands.hpp"
#include "ieq/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace ieq;
using doctest::Approx;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ieq_cmd_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<std::string>> csv_rows(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line); // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

RunConfig small_config(Equation eq, PotentialSpec p, double dt, double T) {
  RunConfig c;
  c.equation = eq;
  c.grid = {2, 16, 16, 6.283185307179586, 6.283185307179586};
  c.scheme.potential = p;
  c.scheme.epsilon = 0.5;
  c.scheme.dt = dt;
  c.final_time = T;
  c.ic.kind = InitialKind::SeededNoise;
  c.ic.amplitude = 0.5;
  c.ic.mean = 0.2;
  c.ic.seed = 3;
  c.snapshot_every = 5;
  return c;
}

} // namespace

TEST_CASE("simulate with zero potential keeps mass and writes every step") {
  RunConfig c = small_config(Equation::CahnHilliard, PotentialSpec::zero(), 0.1, 1.0);
  c.output_dir = scratch_dir("zero").string();
  std::ostringstream log;
  REQUIRE(cmd_simulate(c, {true}, log) == kExitSuccess);

  const auto rows = csv_rows(std::filesystem::path(c.output_dir) / "series.csv");
  REQUIRE(rows.size() == 10);
  const double m0 = std::stod(rows.front()[4]);
  for (const auto& r : rows) CHECK(std::abs(std::stod(r[4]) - m0) <= 1e-12 * std::abs(m0));
  CHECK(std::filesystem::exists(std::filesystem::path(c.output_dir) / "snapshot_000000.csv"));
  CHECK(std::filesystem::exists(std::filesystem::path(c.output_dir) / "snapshot_000005.csv"));
  CHECK(std::filesystem::exists(std::filesystem::path(c.output_dir) / "snapshot_000010.csv"));
}

TEST_CASE("large-step Allen-Cahn passes the strict energy check") {
  RunConfig c = small_config(Equation::AllenCahn, PotentialSpec::double_well(), 10.0, 100.0);
  c.output_dir = scratch_dir("ac_large").string();
  std::ostringstream log;
  CHECK(cmd_simulate(c, {true}, log) == kExitSuccess);
}

TEST_CASE("identical runs produce identical bytes") {
  RunConfig c = small_config(Equation::CahnHilliard, PotentialSpec::flory_huggins(), 0.05, 0.5);
  c.ic.mean = 0.5;
  c.ic.amplitude = 0.2;
  c.output_dir = scratch_dir("det_a").string();
  std::ostringstream log;
  REQUIRE(cmd_simulate(c, {}, log) == kExitSuccess);
  const auto first = std::filesystem::path(c.output_dir);
  c.output_dir = scratch_dir("det_b").string();
  REQUIRE(cmd_simulate(c, {}, log) == kExitSuccess);
  const auto second = std::filesystem::path(c.output_dir);
  CHECK(slurp(first / "series.csv") == slurp(second / "series.csv"));
  CHECK(slurp(first / "snapshot_000010.csv") == slurp(second / "snapshot_000010.csv"));
}

TEST_CASE("invalid configurations exit with the config code") {
  RunConfig c = small_config(Equation::CahnHilliard, PotentialSpec::double_well(), 0.1, 1.0);
  c.output_dir = scratch_dir("bad").string();
  std::ostringstream log;
  c.scheme.dt = 0.0;
  CHECK(cmd_simulate(c, {}, log) == kExitConfigError);

  c.scheme.dt = 0.1;
  const std::vector<double> not_halving{0.01, 0.004};
  CHECK(cmd_converge(c, not_halving, 1e-4, 1, log) == kExitConfigError);
  CHECK(cmd_converge(c, {}, 1e-4, 1, log) == kExitConfigError);
  CHECK(cmd_converge(c, {0.02, 0.01}, 1e-3, 2, log) == kExitConfigError);
  CHECK(cmd_stability_sweep(c, {}, 10, log) == kExitConfigError);
}

TEST_CASE("solver failures exit with the solver code") {
  RunConfig c = small_config(Equation::CahnHilliard, PotentialSpec::double_well(), 1.0, 2.0);
  c.output_dir = scratch_dir("solver").string();
  c.scheme.pcg.max_iters = 1;
  c.scheme.pcg.rel_tol = 1e-14;
  c.scheme.spectral_preconditioner = false;
  std::ostringstream log;
  CHECK(cmd_simulate(c, {}, log) == kExitSolverError);
  CHECK(log.str().find("pcg did not converge") != std::string::npos);
}

TEST_CASE("check-potential") {
  std::ostringstream log;
  RunConfig c;
  c.scheme.potential = PotentialSpec::double_well();
  CHECK(cmd_check_potential(c, log) == kExitSuccess);
  c.scheme.potential = PotentialSpec::flory_huggins();
  CHECK(cmd_check_potential(c, log) == kExitSuccess);
  CHECK(log.str().find("FAIL") == std::string::npos);

  std::ostringstream bad_log;
  c.scheme.potential = PotentialSpec::double_well();
  c.scheme.potential.shift_B = 0.0;
  CHECK(cmd_check_potential(c, bad_log) == kExitFailure);
  CHECK(bad_log.str().find("FAIL parameters") != std::string::npos);
}

TEST_CASE("stability sweep writes one row per step size") {
  RunConfig c = small_config(Equation::CahnHilliard, PotentialSpec::double_well(), 0.1, 1.0);
  c.output_dir = scratch_dir("sweep").string();
  std::ostringstream log;
  CHECK(cmd_stability_sweep(c, {1e-3, 1e-1, 1.0, 10.0}, 20, log) == kExitSuccess);
  const auto rows = csv_rows(std::filesystem::path(c.output_dir) / "sweep.csv");
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.back() == "1");
}

TEST_CASE("converge writes rates") {
  RunConfig c = small_config(Equation::AllenCahn, PotentialSpec::double_well(), 0.1, 0.1);
  c.ic.kind = InitialKind::CosineSum;
  c.ic.amplitude = 0.1;
  c.ic.mean = 0.3;
  c.output_dir = scratch_dir("conv").string();
  std::ostringstream log;
  CHECK(cmd_converge(c, {4e-3, 2e-3, 1e-3, 5e-4}, 6.25e-5, 1, log) == kExitSuccess);
  const std::string text = slurp(std::filesystem::path(c.output_dir) / "convergence.csv");
  CHECK(text.find("# rates") != std::string::npos);
  CHECK(text.find("status=ok") != std::string::npos);
}
