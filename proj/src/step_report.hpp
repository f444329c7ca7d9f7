#pragma once

#include "ieq/scheme.hpp"

namespace ieq::detail {

// Fills the fields shared by both schemes. `dissipation` is the right side
// of the discrete energy identity for the respective flow.
StepReport make_report(const State& before, const State& after, Field w, double dissipation,
                       int pcg_iterations, double pcg_residual, const SchemeConfig& cfg);

void require_mean_zero(const Field& v, const char* context);

} // namespace ieq::detail
