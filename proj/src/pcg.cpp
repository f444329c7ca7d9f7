#include "ieq/pcg.hpp"

#include "ieq/errors.hpp"

#include <cmath>
#include <string>

namespace ieq {

void PcgConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("pcg: tolerances must be positive");
  if (max_iters < 1) throw ConfigError("pcg: max_iters must be >= 1");
}

namespace {

void require_finite_scalar(double v, int iteration) {
  if (!std::isfinite(v)) {
    throw SolverError("pcg: non-finite iterate at iteration " + std::to_string(iteration));
  }
}

// x += a * y
void axpy(Field& x, double a, const Field& y) {
  auto xs = x.values();
  const auto ys = y.values();
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += a * ys[i];
}

} // namespace

PcgResult pcg(const LinearOperator& apply_A, const LinearOperator& apply_Pinv, const Field& rhs,
              const Field& x0, const PcgConfig& cfg) {
  cfg.validate();
  PcgResult result{x0, 0, 0.0, 0.0, false, {}};
  Field& x = result.solution;

  Field r = rhs - apply_A(x);
  Field z = apply_Pinv(r);
  double rz = inner(r, z);
  require_finite_scalar(rz, 0);
  if (rz < 0.0) throw SolverError("pcg: preconditioner is not positive definite");

  result.initial_residual = std::sqrt(rz);
  result.final_residual = result.initial_residual;
  result.residual_history.push_back(result.initial_residual);
  const double target = std::max(cfg.rel_tol * result.initial_residual, cfg.abs_tol);
  if (result.final_residual <= target) {
    result.converged = true;
    return result;
  }

  Field p = z;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const Field Ap = apply_A(p);
    const double pAp = inner(p, Ap);
    require_finite_scalar(pAp, it);
    if (!(pAp > 0.0)) {
      throw SolverError("pcg: operator is not positive definite (p.Ap = " + std::to_string(pAp) +
                        ") at iteration " + std::to_string(it));
    }
    const double alpha = rz / pAp;
    axpy(x, alpha, p);
    axpy(r, -alpha, Ap);
    z = apply_Pinv(r);
    const double rz_next = inner(r, z);
    require_finite_scalar(rz_next, it);

    result.iterations = it;
    result.final_residual = std::sqrt(std::max(rz_next, 0.0));
    result.residual_history.push_back(result.final_residual);
    if (result.final_residual <= target) {
      result.converged = true;
      break;
    }

    const double beta = rz_next / rz;
    rz = rz_next;
    p *= beta;
    p += z;
  }
  for (double v : x.values()) {
    if (!std::isfinite(v)) throw SolverError("pcg: non-finite solution");
  }
  return result;
}

} // namespace ieq
