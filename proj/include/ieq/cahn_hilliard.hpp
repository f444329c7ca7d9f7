#pragma once

#include "ieq/scheme.hpp"

#include <utility>

namespace ieq {

/// First-order IEQ scheme for the Cahn-Hilliard flow
///
///   (phi^{n+1} - phi^n)/dt = M lap w^{n+1}
///   w^{n+1} = -eps^2 lap phi^{n+1} + H^n U^{n+1}
///   U^{n+1} - U^n = H^n (phi^{n+1} - phi^n) / 2
///
/// with H^n = H(phi^n) frozen over the step. U and w are eliminated, leaving
/// a fourth-order equation for phi^{n+1}. Its mean is fixed by mass
/// conservation; the mean-zero remainder is solved by PCG after
/// premultiplying with (-lap)^{-1}, which makes the operator L2-symmetric.

ChState ch_init(const Field& phi0, const ChConfig& cfg);

/// Symmetrized one-step operator on mean-zero fields:
///   (-lap)^{-1} v + dt M eps^2 (-lap) v + dt M P(H^2 v / 2),
/// P the mean projection. Throws PreconditionError if v is not mean-zero.
Field ch_apply_operator(const Field& v, const Field& Hn, const ChConfig& cfg);

/// Advances one step. Throws SolverError (with step context) if PCG fails.
std::pair<ChState, StepReport> ch_step(const ChState& state, const ChConfig& cfg);

double ch_energy_modified(const ChState& state, const ChConfig& cfg);

} // namespace ieq
