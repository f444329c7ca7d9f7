#include "ieq/diagnostics.hpp"
#include "ieq/errors.hpp"
#include "ieq/potential.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace ieq;
using doctest::Approx;

namespace {

std::vector<PotentialSpec> all_specs() {
  return {PotentialSpec::double_well(), PotentialSpec::flory_huggins(2.0, 0.01),
          PotentialSpec::flory_huggins(3.0, 0.05), PotentialSpec::zero()};
}

} // namespace

TEST_CASE("double well values") {
  const auto dw = PotentialSpec::double_well();
  CHECK(eval_F(dw, 0.0) == 0.25);
  CHECK(eval_F(dw, 1.0) == 0.0);
  CHECK(eval_f(dw, 0.0) == 0.0);
  CHECK(eval_f(dw, 2.0) == 6.0);
  CHECK(eval_H(dw, 0.0) == 0.0);
  CHECK(eval_H(dw, 1.0) == 0.0);
  // 6 / sqrt(3.25), evaluated to 40 digits offline.
  CHECK(eval_H(dw, 2.0) == Approx(3.328201177351374732).epsilon(1e-15));
  CHECK(initial_U(dw, 1.0) == 1.0);
  CHECK(initial_U(dw, 0.0) == Approx(1.118033988749894848).epsilon(1e-15));
}

TEST_CASE("zero potential") {
  const auto z = PotentialSpec::zero();
  for (double x : {-3.0, 0.0, 0.7, 12.0}) {
    CHECK(eval_F(z, x) == 0.0);
    CHECK(eval_f(z, x) == 0.0);
    CHECK(eval_H(z, x) == 0.0);
    CHECK(initial_U(z, x) == 1.0);
  }
  CHECK(lipschitz_bound_H(z, 1.0) >= 0.0);
}

TEST_CASE("flory-huggins values") {
  const auto fh = PotentialSpec::flory_huggins(2.0, 0.01);
  CHECK(eval_F(fh, 0.5) == Approx(-0.1931471805599453094).epsilon(1e-14));
  CHECK(std::abs(eval_f(fh, 0.5)) < 1e-15);

  // Quadratic extension against its Taylor polynomial at sigma, evaluated
  // with 40-digit arithmetic.
  CHECK(eval_F(fh, 0.005) == Approx(-0.02181330884154812819).epsilon(1e-13));
  CHECK(eval_F(fh, 0.995) == Approx(-0.02181330884154812819).epsilon(1e-13));
  CHECK(eval_f(fh, 0.005) == Approx(-3.120170355185094977).epsilon(1e-13));
  CHECK(std::isfinite(eval_F(fh, -50.0)));
  CHECK(std::isfinite(eval_H(fh, 80.0)));
}

TEST_CASE("flory-huggins is continuous across the knots") {
  const auto fh = PotentialSpec::flory_huggins(2.0, 0.01);
  for (double knot : {fh.sigma, 1.0 - fh.sigma}) {
    const double below = std::nextafter(knot, -1.0);
    const double above = std::nextafter(knot, 2.0);
    CHECK(std::abs(eval_F(fh, below) - eval_F(fh, above)) <= 1e-10);
    CHECK(std::abs(eval_f(fh, below) - eval_f(fh, above)) <= 1e-10);
    CHECK(std::abs(eval_df(fh, below) - eval_df(fh, above)) <= 1e-8);
  }
}

TEST_CASE("non-finite input is a domain error") {
  const auto dw = PotentialSpec::double_well();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eval_F(dw, nan), DomainError);
  CHECK_THROWS_AS(eval_f(dw, std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(eval_H(PotentialSpec::flory_huggins(), nan), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(PotentialSpec::double_well().validate());
  CHECK_NOTHROW(PotentialSpec::flory_huggins().validate());
  CHECK_NOTHROW(PotentialSpec::double_well_lagrange().validate());

  auto bad = PotentialSpec::double_well();
  bad.shift_B = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  auto fh = PotentialSpec::flory_huggins();
  fh.sigma = 0.6;
  CHECK_THROWS_AS(fh.validate(), DomainError);
  fh = PotentialSpec::flory_huggins();
  fh.theta = -1.0;
  CHECK_THROWS_AS(fh.validate(), DomainError);
  // theta so large that the tails would be concave at sigma
  CHECK_THROWS_AS(PotentialSpec::flory_huggins(80.0, 0.2).validate(), DomainError);
}

TEST_CASE("F + B stays above B - A") {
  for (const auto& spec : all_specs()) {
    for (int i = 0; i <= 40000; ++i) {
      const double x = -10.0 + 20.0 * i / 40000.0;
      REQUIRE(eval_F(spec, x) + spec.shift_B >= spec.shift_B - spec.lower_bound_A);
    }
    CHECK(spec.shift_B - spec.lower_bound_A > 0.0);
  }
}

TEST_CASE("f is the derivative of F") {
  const double h = 1e-4;
  for (const auto& spec : all_specs()) {
    for (int i = 0; i <= 4000; ++i) {
      const double x = -10.0 + 20.0 * i / 4000.0 + 3.1e-5;
      if (spec.kind == PotentialKind::FloryHugginsRegularized &&
          (std::abs(x - spec.sigma) < h || std::abs(x - 1.0 + spec.sigma) < h)) {
        continue;
      }
      const double fd = (eval_F(spec, x + h) - eval_F(spec, x - h)) / (2.0 * h);
      // h^2/6 |F'''| truncation; F''' tracks F'' growth near the log knots.
      const double tol = 1e-6 * std::max(1.0, std::abs(eval_df(spec, x)));
      REQUIRE(std::abs(fd - eval_f(spec, x)) <= tol);
    }
  }
}

TEST_CASE("H times U reproduces f") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (const auto& spec : all_specs()) {
    for (int i = 0; i < 5000; ++i) {
      const double x = dist(rng);
      const double f = eval_f(spec, x);
      const double err = std::abs(eval_H(spec, x) * initial_U(spec, x) - f);
      REQUIRE(err <= 1e-12 * std::max(std::abs(f), 1e-300));
    }
  }
}

TEST_CASE("lagrange double well uses the signed root") {
  const auto lg = PotentialSpec::double_well_lagrange();
  CHECK(initial_U(lg, 0.0) == -0.5);
  CHECK(eval_H(lg, 0.3) == Approx(0.6));
  CHECK(eval_H(lg, 1.7) * initial_U(lg, 1.7) == Approx(eval_f(lg, 1.7)));
  CHECK(lipschitz_bound_H(lg, 3.0) == 2.0);
}

TEST_CASE("Lipschitz bound closed form") {
  const auto dw = PotentialSpec::double_well();
  // C1 over [-2, 2] is max(|f'|) = 11, so C1^2/2 + C1^2.
  CHECK(lipschitz_bound_H(dw, 1.0) == Approx(181.5).epsilon(1e-12));
  // Over [-4, 4]: |f(4)| = 60.
  CHECK(lipschitz_bound_H(dw, 2.0) == Approx(5400.0).epsilon(1e-12));
  for (const auto& spec : all_specs()) {
    CHECK(lipschitz_bound_H(spec, 2.0) >= lipschitz_bound_H(spec, 1.0));
  }
  CHECK_THROWS_AS(lipschitz_bound_H(dw, 0.0), DomainError);
}

TEST_CASE("sampled Lipschitz property on [-C0, C0]") {
  for (const auto& spec : all_specs()) {
    for (double C0 : {0.5, 1.0, 2.0}) {
      const double bound = lipschitz_bound_H(spec, C0);
      std::mt19937_64 rng(11);
      std::uniform_real_distribution<double> dist(-C0, C0);
      for (int i = 0; i < 10000; ++i) {
        const double x = dist(rng), y = dist(rng);
        if (x == y) continue;
        REQUIRE(std::abs(eval_H(spec, x) - eval_H(spec, y)) <= bound * std::abs(x - y));
      }
    }
  }
}

TEST_CASE("names round trip") {
  for (auto k : {PotentialKind::DoubleWell, PotentialKind::FloryHugginsRegularized,
                 PotentialKind::Zero, PotentialKind::DoubleWellLagrange}) {
    CHECK(potential_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(potential_kind_from_string("quartic"), ConfigError);
}
