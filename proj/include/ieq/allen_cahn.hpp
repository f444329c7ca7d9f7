#pragma once

#include "ieq/scheme.hpp"

#include <utility>

namespace ieq {

// First-order IEQ scheme for the Allen-Cahn flow
//
//   (phi^{n+1} - phi^n)/dt + M(-eps^2 lap phi^{n+1} + H^n U^{n+1}) = 0
//   U^{n+1} - U^n = H^n (phi^{n+1} - phi^n) / 2
//
// Eliminating U gives one SPD equation on the full space; no mean
// decomposition is needed and mass is not conserved.

AcState ac_init(const Field& phi0, const AcConfig& cfg);

/// v / (M dt) - eps^2 lap v + H^2 v / 2.
Field ac_apply_operator(const Field& v, const Field& Hn, const AcConfig& cfg);

std::pair<AcState, StepReport> ac_step(const AcState& state, const AcConfig& cfg);

double ac_energy_modified(const AcState& state, const AcConfig& cfg);

} // namespace ieq
