#pragma once

#include "ieq/field.hpp"
#include "ieq/pcg.hpp"
#include "ieq/potential.hpp"

namespace ieq {

/// Physical and numerical parameters shared by both gradient flows.
struct SchemeConfig {
  double mobility = 1.0;
  double epsilon = 1.0;
  double dt = 1e-3;
  PotentialSpec potential;
  PcgConfig pcg;
  /// Use the constant-coefficient spectral preconditioner; identity otherwise.
  bool spectral_preconditioner = true;

  void validate() const;
};

using ChConfig = SchemeConfig;
using AcConfig = SchemeConfig;

/// Phase field, quadratized variable and time after `step` steps.
struct State {
  Field phi;
  Field U;
  double t = 0.0;
  long step = 0;
};

using ChState = State;
using AcState = State;

struct StepReport {
  double energy_modified = 0.0;      // E(phi^{n+1}, U^{n+1})
  double energy_modified_prev = 0.0; // E(phi^n, U^n)
  double energy_original = 0.0;      // E(phi^{n+1}) with the true potential
  double mass = 0.0;                 // integral of phi^{n+1}
  int pcg_iterations = 0;
  double pcg_residual = 0.0;
  /// Dissipated amount on the right of the discrete energy identity:
  /// dt M |grad w|^2 (Cahn-Hilliard) or |phi^{n+1} - phi^n|^2 / (M dt) (Allen-Cahn).
  double dissipation = 0.0;
  /// |left side + dissipation| of the discrete energy identity.
  double dissipation_defect = 0.0;
  /// max(|E^n|, |E^{n+1}|)
  double energy_scale = 0.0;
  /// Allowed E^{n+1} - E^n: max(1e-10 |E^n|, 100 pcg_residual |w|).
  double energy_tolerance = 0.0;
  double max_abs_phi = 0.0;
  Field w_field;
};

/// H(phi) evaluated pointwise.
Field quadratized_slope(const Field& phi, const PotentialSpec& spec);

/// U^0 = sqrt(F(phi0) + B) pointwise, t = 0.
State init_state(const Field& phi0, const PotentialSpec& spec);

/// Integral of eps^2/2 |grad phi|^2 + U^2.
double energy_modified(const Field& phi, const Field& U, double epsilon);
/// Integral of eps^2/2 |grad phi|^2 + F(phi).
double energy_original(const Field& phi, const SchemeConfig& cfg);

} // namespace ieq
