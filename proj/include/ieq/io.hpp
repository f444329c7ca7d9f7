#pragma once

#include "ieq/diagnostics.hpp"
#include "ieq/field.hpp"
#include "ieq/scheme.hpp"

#include <filesystem>
#include <fstream>
#include <string>

namespace ieq {

// CSV formats. Reals are written with 17 significant digits so that files
// round-trip exactly and identical runs produce identical bytes.
//
// Field snapshot, 1D:   header `x,value`, then one `x,value` row per node.
// Field snapshot, 2D:   header `# grid N1 N2 L1 L2`, then N1 rows of N2 values.

void write_snapshot(const std::filesystem::path& path, const Field& field);
Field read_snapshot(const std::filesystem::path& path);

/// Per-step diagnostics:
/// step,t,E_modified,E_original,mass,pcg_iterations,pcg_residual,dissipation_defect,max_abs_phi
class SeriesWriter {
public:
  explicit SeriesWriter(const std::filesystem::path& path);
  void append(long step, double t, const StepReport& report);

private:
  std::ofstream out_;
};

/// Rows `dt,err_phi_l2,err_phi_h1,err_U_l2,err_w_acc` followed by a
/// `# rates ...` summary line.
void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report);
std::string format_rates(const ConvergenceReport& report);

struct SweepRow {
  double dt = 0.0;
  long steps = 0;
  double max_energy_increase = 0.0;
  /// Largest energy_tolerance over the steps.
  double tolerance = 0.0;
  double max_relative_defect = 0.0;
  bool pass = false;
};

/// Rows `dt,steps,max_energy_increase,tolerance,max_relative_defect,pass`.
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

std::string format_real(double v);

} // namespace ieq
