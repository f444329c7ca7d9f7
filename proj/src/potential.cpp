#include "ieq/potential.hpp"

#include "ieq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ieq {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

// Unregularized Flory-Huggins pieces, valid on (0, 1).
double fh_core_F(double theta, double x) {
  return x * std::log(x) + (1.0 - x) * std::log(1.0 - x) + theta * (x - x * x);
}
double fh_core_f(double theta, double x) {
  return std::log(x) - std::log(1.0 - x) + theta * (1.0 - 2.0 * x);
}
double fh_core_df(double theta, double x) {
  return 1.0 / x + 1.0 / (1.0 - x) - 2.0 * theta;
}

// Second-order Taylor extension about the nearer knot outside [sigma, 1 - sigma].
struct Knot {
  bool inside;
  double at;
};

Knot fh_knot(double sigma, double x) {
  if (x < sigma) return {false, sigma};
  if (x > 1.0 - sigma) return {false, 1.0 - sigma};
  return {true, x};
}

double fh_F(const PotentialSpec& s, double x) {
  const Knot k = fh_knot(s.sigma, x);
  if (k.inside) return fh_core_F(s.theta, x);
  const double d = x - k.at;
  return fh_core_F(s.theta, k.at) + fh_core_f(s.theta, k.at) * d +
         0.5 * fh_core_df(s.theta, k.at) * d * d;
}

double fh_f(const PotentialSpec& s, double x) {
  const Knot k = fh_knot(s.sigma, x);
  if (k.inside) return fh_core_f(s.theta, x);
  return fh_core_f(s.theta, k.at) + fh_core_df(s.theta, k.at) * (x - k.at);
}

double fh_df(const PotentialSpec& s, double x) {
  const Knot k = fh_knot(s.sigma, x);
  return fh_core_df(s.theta, k.at);
}

} // namespace

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
  case PotentialKind::DoubleWell: return "double-well";
  case PotentialKind::FloryHugginsRegularized: return "flory-huggins";
  case PotentialKind::Zero: return "zero";
  case PotentialKind::DoubleWellLagrange: return "double-well-lagrange";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(std::string_view name) {
  if (name == "double-well") return PotentialKind::DoubleWell;
  if (name == "flory-huggins") return PotentialKind::FloryHugginsRegularized;
  if (name == "zero") return PotentialKind::Zero;
  if (name == "double-well-lagrange") return PotentialKind::DoubleWellLagrange;
  throw ConfigError("unknown potential kind '" + std::string(name) + "'");
}

PotentialSpec PotentialSpec::double_well(double B) {
  PotentialSpec s;
  s.kind = PotentialKind::DoubleWell;
  s.lower_bound_A = 0.0;
  s.shift_B = B;
  return s;
}

PotentialSpec PotentialSpec::flory_huggins(double theta, double sigma, double A) {
  PotentialSpec s;
  s.kind = PotentialKind::FloryHugginsRegularized;
  s.theta = theta;
  s.sigma = sigma;
  s.lower_bound_A = A;
  s.shift_B = A + 1.0;
  return s;
}

PotentialSpec PotentialSpec::zero(double B) {
  PotentialSpec s;
  s.kind = PotentialKind::Zero;
  s.lower_bound_A = 0.0;
  s.shift_B = B;
  return s;
}

PotentialSpec PotentialSpec::double_well_lagrange() {
  PotentialSpec s;
  s.kind = PotentialKind::DoubleWellLagrange;
  s.lower_bound_A = 0.0;
  s.shift_B = 0.0;
  return s;
}

void PotentialSpec::validate() const {
  if (!std::isfinite(lower_bound_A) || !std::isfinite(shift_B) || lower_bound_A < 0.0) {
    throw DomainError("potential: A must be finite and non-negative, B finite");
  }
  if (kind == PotentialKind::DoubleWellLagrange) {
    if (shift_B != 0.0) throw DomainError("potential: double-well-lagrange requires B = 0");
    return;
  }
  if (!(shift_B > lower_bound_A)) {
    throw DomainError("potential: shift B must exceed lower bound A");
  }
  if (kind == PotentialKind::FloryHugginsRegularized) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("potential: theta must be > 0");
    if (!(sigma > 0.0 && sigma < 0.5)) throw DomainError("potential: sigma must lie in (0, 1/2)");
    if (!(fh_core_df(theta, sigma) > 0.0)) {
      throw DomainError("potential: regularized tails are not convex at sigma");
    }
  }
}

double eval_F(const PotentialSpec& spec, double x) {
  require_finite(x, "eval_F");
  switch (spec.kind) {
  case PotentialKind::DoubleWell:
  case PotentialKind::DoubleWellLagrange: {
    const double q = x * x - 1.0;
    return 0.25 * q * q;
  }
  case PotentialKind::FloryHugginsRegularized: return fh_F(spec, x);
  case PotentialKind::Zero: return 0.0;
  }
  return 0.0;
}

double eval_f(const PotentialSpec& spec, double x) {
  require_finite(x, "eval_f");
  switch (spec.kind) {
  case PotentialKind::DoubleWell:
  case PotentialKind::DoubleWellLagrange: return x * x * x - x;
  case PotentialKind::FloryHugginsRegularized: return fh_f(spec, x);
  case PotentialKind::Zero: return 0.0;
  }
  return 0.0;
}

double eval_df(const PotentialSpec& spec, double x) {
  require_finite(x, "eval_df");
  switch (spec.kind) {
  case PotentialKind::DoubleWell:
  case PotentialKind::DoubleWellLagrange: return 3.0 * x * x - 1.0;
  case PotentialKind::FloryHugginsRegularized: return fh_df(spec, x);
  case PotentialKind::Zero: return 0.0;
  }
  return 0.0;
}

double initial_U(const PotentialSpec& spec, double x) {
  if (spec.kind == PotentialKind::DoubleWellLagrange) {
    require_finite(x, "initial_U");
    return 0.5 * (x * x - 1.0);
  }
  return std::sqrt(eval_F(spec, x) + spec.shift_B);
}

double eval_H(const PotentialSpec& spec, double x) {
  if (spec.kind == PotentialKind::DoubleWellLagrange) {
    require_finite(x, "eval_H");
    return 2.0 * x;
  }
  return eval_f(spec, x) / std::sqrt(eval_F(spec, x) + spec.shift_B);
}

double lipschitz_bound_H(const PotentialSpec& spec, double C0) {
  if (!(C0 > 0.0) || !std::isfinite(C0)) throw DomainError("lipschitz_bound_H: C0 must be > 0");
  if (spec.kind == PotentialKind::DoubleWellLagrange) return 2.0; // H(x) = 2x

  const double lo = -2.0 * C0;
  const double hi = 2.0 * C0;
  double C1 = 0.0;
  auto visit = [&](double x) {
    C1 = std::max({C1, std::abs(eval_F(spec, x)), std::abs(eval_f(spec, x)),
                   std::abs(eval_df(spec, x)), std::sqrt(eval_F(spec, x) + spec.shift_B)});
  };
  constexpr int samples = 200000;
  for (int i = 0; i <= samples; ++i) visit(lo + (hi - lo) * i / samples);
  if (spec.kind == PotentialKind::FloryHugginsRegularized) {
    for (double knot : {spec.sigma, 1.0 - spec.sigma}) {
      if (knot >= lo && knot <= hi) visit(knot);
    }
  }
  const double gap = spec.shift_B - spec.lower_bound_A;
  return C1 * C1 / (2.0 * std::sqrt(gap * gap * gap)) + C1 * C1 / gap;
}

} // namespace ieq
