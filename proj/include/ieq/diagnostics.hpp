#pragma once

#include "ieq/field.hpp"
#include "ieq/scheme.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace ieq {

enum class Equation { CahnHilliard, AllenCahn };

std::string_view to_string(Equation eq);
Equation equation_from_string(std::string_view name);

/// Dispatches to ch_step or ac_step.
std::pair<State, StepReport> advance(Equation eq, const State& state, const SchemeConfig& cfg);

struct ErrorNorms {
  double l2 = 0.0;
  double h1 = 0.0; // sqrt(l2^2 + |grad|^2)
  double linf = 0.0;
};

ErrorNorms error_norms(const Field& a, const Field& b);

/// |U - sqrt(F(phi) + B)| in L2: how far the auxiliary variable has drifted
/// from its defining relation.
double u_consistency_defect(const State& state, const PotentialSpec& spec);

struct Checkpoint {
  double t = 0.0;
  State state;
  Field w; // chemical potential of the step that ended at t; empty at t = 0
};

/// Fine-step run from phi0 to T with states stored at the requested times.
/// Each checkpoint time must be an integer multiple of dt_ref not beyond T,
/// otherwise PreconditionError. Output is ordered by time.
std::vector<Checkpoint> run_reference(Equation eq, const Field& phi0, const SchemeConfig& cfg,
                                      double T, double dt_ref, std::span<const double> checkpoints);

struct RateFit {
  bool defined = false; // false when every error is below round-off
  double rate = 0.0;    // least-squares slope of log(error) against log(dt)
  double intercept = 0.0;
  double r_squared = 0.0;
};

RateFit fit_rate(std::span<const double> dts, std::span<const double> errors);

struct ConvergenceReport {
  std::vector<double> dts;
  std::vector<double> errors_phi_l2;
  std::vector<double> errors_phi_h1;
  std::vector<double> errors_U_l2;
  /// dt * sum_n |e_w^{n+1}|_{H1}^2 (Cahn-Hilliard only, zeros otherwise).
  std::vector<double> errors_w_integrated;
  /// sqrt(|e_phi|_{H1}^2 + |e_U|^2) at T.
  std::vector<double> errors_combined;

  RateFit rate_phi_l2;
  RateFit rate_phi_h1;
  RateFit rate_U_l2;
  RateFit rate_w; // fitted on sqrt(errors_w_integrated)
  RateFit rate_combined;

  /// Some defined fit has R^2 below 0.98.
  bool inconclusive = false;
};

/// Temporal refinement study against a same-grid reference run with
/// dt_ref. dts must halve successively, dt_ref <= min(dts)/8, and every
/// step size must divide T. Studies for different dt run concurrently.
ConvergenceReport convergence_study(Equation eq, const Field& phi0, const SchemeConfig& cfg,
                                    double T, std::span<const double> dts, double dt_ref);

struct LipschitzCheck {
  double max_observed_slope = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Samples pairs uniformly from [-C0, C0]^2 and compares the largest
/// difference quotient of H with lipschitz_bound_H. samples >= 1000.
LipschitzCheck check_lipschitz_H(const PotentialSpec& spec, double C0, int samples,
                                 std::uint64_t seed);

/// |grad(H(a) - H(b))| / (|a - b| + |grad(a - b)|) for two fields.
double gradient_lipschitz_ratio(const PotentialSpec& spec, const Field& a, const Field& b);

} // namespace ieq
