#include "ieq/cahn_hilliard.hpp"

#include "ieq/errors.hpp"
#include "ieq/spectral.hpp"
#include "step_report.hpp"

#include <algorithm>
#include <sstream>

namespace ieq {

namespace {

// (-lap)^{-1} v + dt M eps^2 (-lap) v + dt M P(half_H2 v), v mean-zero.
Field symmetrized_operator(const Field& v, const Field& half_H2, const ChConfig& cfg) {
  const double dtM = cfg.dt * cfg.mobility;
  const double stiff = dtM * cfg.epsilon * cfg.epsilon;
  Field out = apply_symbol(v, [stiff](double k2) { return k2 > 0.0 ? 1.0 / k2 + stiff * k2 : 0.0; });
  Field coupling = subtract_mean(multiply(half_H2, v));
  coupling *= dtM;
  out += coupling;
  return out;
}

Field half_square(const Field& H) {
  return map(H, [](double h) { return 0.5 * h * h; });
}

} // namespace

ChState ch_init(const Field& phi0, const ChConfig& cfg) {
  return init_state(phi0, cfg.potential);
}

Field ch_apply_operator(const Field& v, const Field& Hn, const ChConfig& cfg) {
  detail::require_mean_zero(v, "ch_apply_operator");
  return symmetrized_operator(v, half_square(Hn), cfg);
}

std::pair<ChState, StepReport> ch_step(const ChState& state, const ChConfig& cfg) {
  const double dtM = cfg.dt * cfg.mobility;
  const double stiff = dtM * cfg.epsilon * cfg.epsilon;

  const Field H = quadratized_slope(state.phi, cfg.potential);
  const Field half_H2 = half_square(H);
  // g = H U^n - H^2 phi^n / 2, so that w^{n+1} = -eps^2 lap phi^{n+1} + H^2 phi^{n+1} / 2 + g.
  const Field g = multiply(H, state.U) - multiply(half_H2, state.phi);

  // phi^{n+1} = c + v with c the conserved mean and v mean-zero.
  const double c = mean(state.phi);
  Field phi_hat = state.phi;
  phi_hat += -c;

  Field coupling = subtract_mean(g + c * half_H2);
  coupling *= dtM;
  const Field rhs = apply_symbol(phi_hat, [](double k2) { return k2 > 0.0 ? 1.0 / k2 : 0.0; }) -
                    coupling;

  const double c_bar = norm_linf(half_H2);
  auto apply_A = [&](const Field& v) { return symmetrized_operator(v, half_H2, cfg); };
  LinearOperator apply_Pinv;
  if (cfg.spectral_preconditioner) {
    apply_Pinv = [&](const Field& r) {
      return apply_symbol(r, [&](double k2) {
        return k2 > 0.0 ? 1.0 / (1.0 / k2 + stiff * k2 + dtM * c_bar) : 0.0;
      });
    };
  } else {
    apply_Pinv = [](const Field& r) { return subtract_mean(r); };
  }

  PcgResult solve = pcg(apply_A, apply_Pinv, rhs, phi_hat, cfg.pcg);
  if (!solve.converged) {
    std::ostringstream msg;
    msg << "ch_step " << state.step + 1 << " (t = " << state.t + cfg.dt
        << "): pcg did not converge in " << solve.iterations << " iterations, residual "
        << solve.final_residual;
    throw SolverError(msg.str());
  }

  ChState next;
  next.phi = std::move(solve.solution);
  next.phi += c;
  next.U = state.U + multiply(0.5 * H, next.phi - state.phi);
  next.t = state.t + cfg.dt;
  next.step = state.step + 1;

  Field w = (-cfg.epsilon * cfg.epsilon) * laplacian(next.phi) + multiply(half_H2, next.phi) + g;
  const double grad_w = seminorm_h1(w);
  StepReport report = detail::make_report(state, next, std::move(w), dtM * grad_w * grad_w,
                                          solve.iterations, solve.final_residual, cfg);
  return {std::move(next), std::move(report)};
}

double ch_energy_modified(const ChState& state, const ChConfig& cfg) {
  return energy_modified(state.phi, state.U, cfg.epsilon);
}

} // namespace ieq
