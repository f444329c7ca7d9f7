#include "ieq/diagnostics.hpp"
#include "ieq/errors.hpp"
#include "ieq/spectral.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace ieq;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

SchemeConfig config(const PotentialSpec& p) {
  SchemeConfig cfg;
  cfg.potential = p;
  cfg.epsilon = 0.5;
  cfg.pcg.rel_tol = 1e-12;
  return cfg;
}

} // namespace

TEST_CASE("equation names") {
  CHECK(equation_from_string("cahn-hilliard") == Equation::CahnHilliard);
  CHECK(equation_from_string(to_string(Equation::AllenCahn)) == Equation::AllenCahn);
  CHECK_THROWS_AS(equation_from_string("heat"), ConfigError);
}

TEST_CASE("error norms") {
  const Grid g = Grid::line(32, 2.0 * kPi);
  const Field a = Field::from_function(g, [](double x, double) { return std::sin(x); });
  const ErrorNorms e = error_norms(a, Field(g));
  CHECK(e.l2 == Approx(std::sqrt(kPi)));
  CHECK(e.h1 == Approx(std::sqrt(2.0 * kPi)));
  CHECK(e.linf == Approx(1.0).epsilon(1e-3));
  const ErrorNorms z = error_norms(a, a);
  CHECK(z.l2 == 0.0);
  CHECK(z.h1 == 0.0);
}

TEST_CASE("fit_rate") {
  const std::vector<double> dts{0.4, 0.2, 0.1, 0.05};
  std::vector<double> errs;
  for (double dt : dts) errs.push_back(3.0 * dt * dt);
  const RateFit f = fit_rate(dts, errs);
  CHECK(f.defined);
  CHECK(f.rate == Approx(2.0));
  CHECK(f.intercept == Approx(std::log(3.0)));
  CHECK(f.r_squared == Approx(1.0));

  const std::vector<double> tiny{1e-15, 1e-15, 1e-15, 1e-15};
  CHECK_FALSE(fit_rate(dts, tiny).defined);
}

TEST_CASE("reference run checkpoints against the closed form") {
  const Grid g = Grid::plane(16, 16, 2.0 * kPi, 2.0 * kPi);
  SchemeConfig cfg = config(PotentialSpec::zero());
  const Field phi0 = oracle::wavy_field(g, 0.3, 0.4, 2);
  const double dt_ref = 1e-2;
  const std::vector<double> times{0.0, 0.05, 0.1};
  const auto cps = run_reference(Equation::CahnHilliard, phi0, cfg, 0.1, dt_ref, times);
  REQUIRE(cps.size() == 3);
  const double stiff = dt_ref * cfg.epsilon * cfg.epsilon;
  for (const Checkpoint& cp : cps) {
    const int steps = static_cast<int>(std::lround(cp.t / dt_ref));
    const Field expected = apply_symbol(phi0, [&](double k2) {
      return std::pow(1.0 / (1.0 + stiff * k2 * k2), steps);
    });
    CHECK(norm_linf(cp.state.phi - expected) <= 1e-9);
  }
  CHECK(cps[0].w.size() == 0);
  CHECK(cps[1].w.size() == g.size());

  const std::vector<double> bad{0.015};
  CHECK_THROWS_AS(run_reference(Equation::CahnHilliard, phi0, cfg, 0.1, dt_ref, bad),
                  PreconditionError);
  const std::vector<double> late{0.2};
  CHECK_THROWS_AS(run_reference(Equation::CahnHilliard, phi0, cfg, 0.1, dt_ref, late),
                  PreconditionError);
}

TEST_CASE("convergence study input checks") {
  const Grid g = Grid::line(16, 2.0 * kPi);
  const SchemeConfig cfg = config(PotentialSpec::double_well());
  const Field phi0 = oracle::wavy_field(g, 0.0, 0.3, 1);
  const std::vector<double> not_halving{0.01, 0.004};
  CHECK_THROWS_AS(convergence_study(Equation::AllenCahn, phi0, cfg, 0.04, not_halving, 1e-4),
                  PreconditionError);
  const std::vector<double> ok{0.01, 0.005};
  CHECK_THROWS_AS(convergence_study(Equation::AllenCahn, phi0, cfg, 0.04, ok, 1e-3),
                  PreconditionError);
  const std::vector<double> one{0.01};
  CHECK_THROWS_AS(convergence_study(Equation::AllenCahn, phi0, cfg, 0.04, one, 1e-4),
                  PreconditionError);
}

TEST_CASE("first-order convergence with zero potential") {
  const Grid g = Grid::plane(16, 16, 2.0 * kPi, 2.0 * kPi);
  const SchemeConfig cfg = config(PotentialSpec::zero());
  const Field phi0 = oracle::wavy_field(g, 0.1, 0.5, 6);
  const std::vector<double> dts{0.02, 0.01, 0.005, 0.0025};
  for (Equation eq : {Equation::CahnHilliard, Equation::AllenCahn}) {
    const ConvergenceReport r = convergence_study(eq, phi0, cfg, 0.2, dts, 0.0025 / 8);
    CHECK(r.rate_phi_l2.defined);
    CHECK(r.rate_phi_l2.rate == Approx(1.0).epsilon(0.1));
    CHECK(r.rate_combined.rate == Approx(1.0).epsilon(0.1));
    CHECK_FALSE(r.rate_U_l2.defined);
    CHECK_FALSE(r.inconclusive);
  }
}

TEST_CASE("convergence study is deterministic") {
  const Grid g = Grid::line(32, 2.0 * kPi);
  const SchemeConfig cfg = config(PotentialSpec::double_well());
  const Field phi0 = oracle::wavy_field(g, 0.2, 0.5, 6);
  const std::vector<double> dts{0.02, 0.01, 0.005};
  const ConvergenceReport a = convergence_study(Equation::CahnHilliard, phi0, cfg, 0.1, dts, 5e-4);
  const ConvergenceReport b = convergence_study(Equation::CahnHilliard, phi0, cfg, 0.1, dts, 5e-4);
  CHECK(a.errors_combined == b.errors_combined);
  CHECK(a.errors_w_integrated == b.errors_w_integrated);
  for (double e : a.errors_w_integrated) CHECK(e > 0.0);
}

TEST_CASE("sampled Lipschitz checks pass and are seeded") {
  for (const auto& p : {PotentialSpec::double_well(), PotentialSpec::flory_huggins()}) {
    for (double C0 : {1.0, 2.0}) {
      const LipschitzCheck a = check_lipschitz_H(p, C0, 10000, 1);
      const LipschitzCheck b = check_lipschitz_H(p, C0, 10000, 1);
      CHECK(a.pass);
      CHECK(a.max_observed_slope <= a.bound);
      CHECK(a.max_observed_slope == b.max_observed_slope);
    }
  }
  CHECK_THROWS_AS(check_lipschitz_H(PotentialSpec::double_well(), 1.0, 10, 1), PreconditionError);
}

TEST_CASE("gradient Lipschitz ratio stays within the calibrated constant") {
  // The constant is calibrated on one set of smooth fields and then checked,
  // with a 1.5x margin, on an independent set drawn from the same family.
  const Grid g = Grid::plane(32, 32, 2.0 * kPi, 2.0 * kPi);
  for (const auto& p : {PotentialSpec::double_well(), PotentialSpec::flory_huggins()}) {
    const double centre = p.kind == PotentialKind::FloryHugginsRegularized ? 0.5 : 0.0;
    auto ratio = [&](unsigned seed) {
      const Field a = oracle::wavy_field(g, centre, 0.6, seed);
      const Field b = oracle::wavy_field(g, centre + 0.05, 0.5, seed + 1000);
      return gradient_lipschitz_ratio(p, a, b);
    };
    double calibrated = 0.0;
    for (unsigned s = 0; s < 20; ++s) calibrated = std::max(calibrated, ratio(s));
    REQUIRE(calibrated > 0.0);
    for (unsigned s = 100; s < 140; ++s) CHECK(ratio(s) <= 1.5 * calibrated);
    CHECK(calibrated <= lipschitz_bound_H(p, 1.0));
  }
}

TEST_CASE("U consistency defect vanishes at initialization") {
  const Grid g = Grid::line(16, 2.0 * kPi);
  const auto p = PotentialSpec::flory_huggins();
  const State s = init_state(oracle::wavy_field(g, 0.5, 0.2, 1), p);
  CHECK(u_consistency_defect(s, p) < 1e-15);
}
