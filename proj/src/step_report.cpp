#include "step_report.hpp"

#include "ieq/errors.hpp"
#include "ieq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ieq::detail {

StepReport make_report(const State& before, const State& after, Field w, double dissipation,
                       int pcg_iterations, double pcg_residual, const SchemeConfig& cfg) {
  const double eps2 = cfg.epsilon * cfg.epsilon;
  const double g_new = seminorm_h1(after.phi);
  const double g_old = seminorm_h1(before.phi);
  const double g_diff = seminorm_h1(after.phi - before.phi);
  const double u_new = inner(after.U, after.U);
  const double u_old = inner(before.U, before.U);
  const Field dU = after.U - before.U;

  StepReport r;
  r.energy_modified = 0.5 * eps2 * g_new * g_new + u_new;
  r.energy_modified_prev = 0.5 * eps2 * g_old * g_old + u_old;
  r.energy_original = energy_original(after.phi, cfg);
  r.mass = integral(after.phi);
  r.pcg_iterations = pcg_iterations;
  r.pcg_residual = pcg_residual;
  r.dissipation = dissipation;

  // 2(a, a - b) = |a|^2 - |b|^2 + |a - b|^2 applied to grad phi and U.
  const double lhs = 0.5 * eps2 * (g_new * g_new - g_old * g_old + g_diff * g_diff) + u_new - u_old +
                     inner(dU, dU);
  r.dissipation_defect = std::abs(lhs + dissipation);
  r.energy_scale = std::max(std::abs(r.energy_modified), std::abs(r.energy_modified_prev));
  r.energy_tolerance =
      std::max(1e-10 * std::abs(r.energy_modified_prev), 100.0 * pcg_residual * norm_l2(w));
  r.max_abs_phi = norm_linf(after.phi);
  r.w_field = std::move(w);
  return r;
}

void require_mean_zero(const Field& v, const char* context) {
  if (std::abs(mean(v)) > 1e-10 * norm_linf(v)) {
    throw PreconditionError(std::string(context) + ": argument must be mean-zero");
  }
}

} // namespace ieq::detail
