#pragma once

#include <string>
#include <string_view>

namespace ieq {

enum class PotentialKind {
  DoubleWell,              // F(x) = (x^2 - 1)^2 / 4
  FloryHugginsRegularized, // logarithmic mixing energy, quadratic tails outside [sigma, 1 - sigma]
  Zero,                    // F = 0, for linear test problems
  DoubleWellLagrange,      // double well with B = 0 and the signed root U = (x^2 - 1)/2
};

std::string_view to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(std::string_view name);

/// Bulk potential F together with the quadratization parameters.
///
/// The quadratized variable is U = sqrt(F + B) and its slope H = f / U
/// with f = F'. Every kind except DoubleWellLagrange requires B > A where
/// F > -A on the whole real line, which keeps U bounded away from zero.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::DoubleWell;
  double theta = 2.0;
  double sigma = 0.01;
  double lower_bound_A = 0.0;
  double shift_B = 1.0;

  static PotentialSpec double_well(double B = 1.0);
  static PotentialSpec flory_huggins(double theta = 2.0, double sigma = 0.01, double A = 1.0);
  static PotentialSpec zero(double B = 1.0);
  static PotentialSpec double_well_lagrange();

  /// Throws DomainError when parameters are out of range (theta <= 0,
  /// sigma outside (0, 1/2), non-convex tails) or B <= A.
  void validate() const;
};

double eval_F(const PotentialSpec& spec, double x);
double eval_f(const PotentialSpec& spec, double x);
/// Second derivative f' = F''.
double eval_df(const PotentialSpec& spec, double x);
double eval_H(const PotentialSpec& spec, double x);
double initial_U(const PotentialSpec& spec, double x);

/// Closed-form Lipschitz constant of H on [-C0, C0]:
///   C1^2 / (2 (B - A)^{3/2}) + C1^2 / (B - A),
/// with C1 the maximum of |F|, |f|, |f'|, sqrt(F + B) over [-2 C0, 2 C0].
double lipschitz_bound_H(const PotentialSpec& spec, double C0);

} // namespace ieq
