#pragma once

#include "ieq/field.hpp"

#include <functional>

namespace ieq {

// Fourier-multiplier operators on periodic grids. All functions are safe to
// call concurrently; transform plans are cached per grid shape.

/// Multiplies every Fourier mode of u by symbol(|k|^2), k the physical
/// wavevector (integer index times 2 pi / L per axis).
Field apply_symbol(const Field& u, const std::function<double(double)>& symbol);

Field laplacian(const Field& u);

/// Mean-zero v with -laplacian(v) = u. Throws PreconditionError unless
/// |mean(u)| <= 1e-10 * max|u|.
Field inv_neg_laplacian(const Field& u);

/// sqrt(sum_k |k|^2 |u_k|^2) scaled to the discrete L2 inner product, i.e.
/// sqrt(inner(u, -laplacian(u))) without the cancellation.
double seminorm_h1(const Field& u);

/// L2 norm evaluated from Fourier coefficients (Parseval).
double spectral_norm_l2(const Field& u);

} // namespace ieq
