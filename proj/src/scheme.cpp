#include "ieq/scheme.hpp"

#include "ieq/errors.hpp"
#include "ieq/spectral.hpp"

#include <cmath>

namespace ieq {

void SchemeConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(mobility)) throw ConfigError("mobility M must be positive");
  if (!positive(epsilon)) throw ConfigError("interface width epsilon must be positive");
  if (!positive(dt)) throw ConfigError("time step dt must be positive");
  try {
    potential.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  pcg.validate();
}

Field quadratized_slope(const Field& phi, const PotentialSpec& spec) {
  return map(phi, [&](double x) { return eval_H(spec, x); });
}

State init_state(const Field& phi0, const PotentialSpec& spec) {
  phi0.require_finite("init_state");
  Field U = map(phi0, [&](double x) { return initial_U(spec, x); });
  return State{phi0, std::move(U), 0.0, 0};
}

double energy_modified(const Field& phi, const Field& U, double epsilon) {
  const double g = seminorm_h1(phi);
  return 0.5 * epsilon * epsilon * g * g + inner(U, U);
}

double energy_original(const Field& phi, const SchemeConfig& cfg) {
  const double g = seminorm_h1(phi);
  const Field F = map(phi, [&](double x) { return eval_F(cfg.potential, x); });
  return 0.5 * cfg.epsilon * cfg.epsilon * g * g + integral(F);
}

} // namespace ieq
