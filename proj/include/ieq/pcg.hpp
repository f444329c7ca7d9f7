#pragma once

#include "ieq/field.hpp"

#include <functional>
#include <vector>

namespace ieq {

struct PcgConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_iters = 500;

  void validate() const;
};

struct PcgResult {
  Field solution;
  int iterations = 0;
  /// sqrt((r, P^{-1} r)) at exit.
  double final_residual = 0.0;
  double initial_residual = 0.0;
  bool converged = false;
  /// Preconditioned residual norm after each iteration, starting with the
  /// initial residual.
  std::vector<double> residual_history;
};

using LinearOperator = std::function<Field(const Field&)>;

/// Matrix-free preconditioned conjugate gradient in the discrete L2 inner
/// product. apply_A and apply_Pinv must be symmetric positive definite on
/// the subspace containing rhs and x0.
///
/// Stops when the preconditioned residual falls below
/// max(rel_tol * initial, abs_tol). Hitting max_iters returns with
/// converged = false; a non-finite iterate or a breakdown of positivity
/// throws SolverError.
PcgResult pcg(const LinearOperator& apply_A, const LinearOperator& apply_Pinv, const Field& rhs,
              const Field& x0, const PcgConfig& cfg);

} // namespace ieq
