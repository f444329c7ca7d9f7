#include "ieq/allen_cahn.hpp"

#include "ieq/errors.hpp"
#include "ieq/spectral.hpp"
#include "step_report.hpp"

#include <sstream>

namespace ieq {

namespace {

Field full_operator(const Field& v, const Field& half_H2, const AcConfig& cfg) {
  const double mass_term = 1.0 / (cfg.mobility * cfg.dt);
  const double eps2 = cfg.epsilon * cfg.epsilon;
  Field out = apply_symbol(v, [&](double k2) { return mass_term + eps2 * k2; });
  out += multiply(half_H2, v);
  return out;
}

Field half_square(const Field& H) {
  return map(H, [](double h) { return 0.5 * h * h; });
}

} // namespace

AcState ac_init(const Field& phi0, const AcConfig& cfg) {
  return init_state(phi0, cfg.potential);
}

Field ac_apply_operator(const Field& v, const Field& Hn, const AcConfig& cfg) {
  return full_operator(v, half_square(Hn), cfg);
}

std::pair<AcState, StepReport> ac_step(const AcState& state, const AcConfig& cfg) {
  const double mass_term = 1.0 / (cfg.mobility * cfg.dt);
  const double eps2 = cfg.epsilon * cfg.epsilon;

  const Field H = quadratized_slope(state.phi, cfg.potential);
  const Field half_H2 = half_square(H);
  const Field rhs =
      mass_term * state.phi - multiply(H, state.U) + multiply(half_H2, state.phi);

  const double c_bar = norm_linf(half_H2);
  auto apply_A = [&](const Field& v) { return full_operator(v, half_H2, cfg); };
  LinearOperator apply_Pinv;
  if (cfg.spectral_preconditioner) {
    apply_Pinv = [&](const Field& r) {
      return apply_symbol(r, [&](double k2) { return 1.0 / (mass_term + eps2 * k2 + c_bar); });
    };
  } else {
    apply_Pinv = [](const Field& r) { return r; };
  }

  PcgResult solve = pcg(apply_A, apply_Pinv, rhs, state.phi, cfg.pcg);
  if (!solve.converged) {
    std::ostringstream msg;
    msg << "ac_step " << state.step + 1 << " (t = " << state.t + cfg.dt
        << "): pcg did not converge in " << solve.iterations << " iterations, residual "
        << solve.final_residual;
    throw SolverError(msg.str());
  }

  AcState next;
  next.phi = std::move(solve.solution);
  const Field dphi = next.phi - state.phi;
  next.U = state.U + multiply(0.5 * H, dphi);
  next.t = state.t + cfg.dt;
  next.step = state.step + 1;

  Field w = (-eps2) * laplacian(next.phi) + multiply(H, next.U);
  StepReport report = detail::make_report(state, next, std::move(w), mass_term * inner(dphi, dphi),
                                          solve.iterations, solve.final_residual, cfg);
  return {std::move(next), std::move(report)};
}

double ac_energy_modified(const AcState& state, const AcConfig& cfg) {
  return energy_modified(state.phi, state.U, cfg.epsilon);
}

} // namespace ieq
