#include "ieq/commands.hpp"

#include "ieq/errors.hpp"
#include "ieq/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>

namespace ieq {

namespace {

std::filesystem::path snapshot_path(const std::string& dir, long step) {
  char name[64];
  std::snprintf(name, sizeof name, "snapshot_%06ld.csv", step);
  return std::filesystem::path(dir) / name;
}

// Maps the library's exception types onto exit codes.
int guarded(std::ostream& log, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const PreconditionError& e) {
    log << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SolverError& e) {
    log << "solver failure: " << e.what() << '\n';
    return kExitSolverError;
  } catch (const DomainError& e) {
    log << "solver failure: " << e.what() << '\n';
    return kExitSolverError;
  } catch (const std::ios_base::failure& e) {
    log << "i/o error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "i/o error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

Check check_lower_bound(const PotentialSpec& p) {
  if (p.kind == PotentialKind::DoubleWellLagrange) {
    return {"lower-bound", true, "n/a (signed root, B = 0)"};
  }
  const double gap = p.shift_B - p.lower_bound_A;
  double min_shifted = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 20000; ++i) {
    const double x = -10.0 + 20.0 * i / 20000.0;
    min_shifted = std::min(min_shifted, eval_F(p, x) + p.shift_B);
  }
  const bool pass = gap > 0.0 && min_shifted >= gap;
  return {"lower-bound", pass,
          "B - A = " + format_real(gap) + ", min F + B on [-10, 10] = " + format_real(min_shifted)};
}

// Central differences at h = 1e-4. The tolerance scales with max(1, |F''|)
// since the truncation error h^2/6 |F'''| is large where the logarithm bends.
Check check_derivative(const PotentialSpec& p) {
  const double h = 1e-4;
  double worst = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = -10.0 + 20.0 * i / 20000.0 + 1.234567e-5;
    if (p.kind == PotentialKind::FloryHugginsRegularized &&
        (std::abs(x - p.sigma) < h || std::abs(x - 1.0 + p.sigma) < h)) {
      continue;
    }
    const double fd = (eval_F(p, x + h) - eval_F(p, x - h)) / (2.0 * h);
    const double scale = 1e-6 * std::max(1.0, std::abs(eval_df(p, x)));
    worst = std::max(worst, std::abs(fd - eval_f(p, x)) / scale);
  }
  return {"derivative", worst <= 1.0, "worst mismatch / tolerance = " + format_real(worst)};
}

Check check_quadratization(const PotentialSpec& p) {
  double worst = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = -10.0 + 20.0 * i / 20000.0;
    const double f = eval_f(p, x);
    const double prod = eval_H(p, x) * initial_U(p, x);
    const double err = std::abs(prod - f);
    worst = std::max(worst, f == 0.0 ? err : err / std::abs(f));
  }
  return {"quadratization", worst <= 1e-12, "max relative |H U - f| = " + format_real(worst)};
}

Check check_knots(const PotentialSpec& p) {
  if (p.kind != PotentialKind::FloryHugginsRegularized) return {"knot-continuity", true, "n/a"};
  double worst = 0.0;
  for (double knot : {p.sigma, 1.0 - p.sigma}) {
    const double below = std::nextafter(knot, -1.0);
    const double above = std::nextafter(knot, 2.0);
    worst = std::max({worst, std::abs(eval_F(p, below) - eval_F(p, above)),
                      std::abs(eval_f(p, below) - eval_f(p, above))});
  }
  return {"knot-continuity", worst <= 1e-10, "max jump = " + format_real(worst)};
}

Check check_lipschitz(const PotentialSpec& p, double C0) {
  const LipschitzCheck r = check_lipschitz_H(p, C0, 10000, 1234567);
  return {"lipschitz C0=" + format_real(C0), r.pass,
          "max sampled slope = " + format_real(r.max_observed_slope) +
              ", bound = " + format_real(r.bound)};
}

template <typename Fn>
Check guarded_check(const std::string& name, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

} // namespace

int cmd_simulate(const RunConfig& cfg, const SimulateOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const Grid grid = cfg.grid.make();
    const double dt = cfg.scheme.dt;
    const long steps = static_cast<long>(std::ceil(cfg.final_time / dt - 1e-9));

    State state = init_state(make_initial_condition(cfg.ic, grid, cfg.scheme.epsilon),
                             cfg.scheme.potential);
    std::filesystem::create_directories(cfg.output_dir);
    SeriesWriter series(std::filesystem::path(cfg.output_dir) / "series.csv");
    write_snapshot(snapshot_path(cfg.output_dir, 0), state.phi);

    for (long n = 1; n <= steps; ++n) {
      auto [next, report] = advance(cfg.equation, state, cfg.scheme);
      state = std::move(next);
      series.append(n, state.t, report);
      if (n % cfg.snapshot_every == 0 || n == steps) {
        write_snapshot(snapshot_path(cfg.output_dir, n), state.phi);
      }
      const double increase = report.energy_modified - report.energy_modified_prev;
      if (opts.strict_energy && increase > report.energy_tolerance) {
        log << "energy increased by " << format_real(increase) << " at step " << n
            << " (tolerance " << format_real(report.energy_tolerance) << ")\n";
        return static_cast<int>(kExitFailure);
      }
    }
    log << "simulate: " << steps << " steps of " << to_string(cfg.equation) << ", final E = "
        << format_real(energy_modified(state.phi, state.U, cfg.scheme.epsilon)) << '\n';
    return static_cast<int>(kExitSuccess);
  });
}

int cmd_converge(const RunConfig& cfg, const std::vector<double>& dts, double dt_ref,
                 std::optional<int> assert_order, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    if (assert_order && *assert_order != 1) {
      throw ConfigError("--assert-order supports only order 1");
    }
    const Grid grid = cfg.grid.make();
    const Field phi0 = make_initial_condition(cfg.ic, grid, cfg.scheme.epsilon);
    const ConvergenceReport report =
        convergence_study(cfg.equation, phi0, cfg.scheme, cfg.final_time, dts, dt_ref);
    std::filesystem::create_directories(cfg.output_dir);
    write_convergence_csv(std::filesystem::path(cfg.output_dir) / "convergence.csv", report);
    log << format_rates(report) << '\n';

    if (assert_order) {
      bool ok = !report.inconclusive && report.rate_combined.defined;
      for (const RateFit* f : {&report.rate_phi_l2, &report.rate_phi_h1, &report.rate_U_l2,
                               &report.rate_w, &report.rate_combined}) {
        if (f->defined && (f->rate < 0.85 || f->rate > 1.15)) ok = false;
      }
      if (!ok) {
        log << "converge: observed order outside [0.85, 1.15] or fit inconclusive\n";
        return static_cast<int>(kExitFailure);
      }
    }
    return static_cast<int>(kExitSuccess);
  });
}

int cmd_stability_sweep(const RunConfig& cfg, const std::vector<double>& dts, int steps,
                        std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    if (dts.empty()) throw ConfigError("stability-sweep: empty time-step list");
    if (steps < 1) throw ConfigError("stability-sweep: steps must be >= 1");
    const Grid grid = cfg.grid.make();
    const Field phi0 = make_initial_condition(cfg.ic, grid, cfg.scheme.epsilon);

    std::vector<SweepRow> rows;
    bool all_pass = true;
    for (double dt : dts) {
      if (!(dt > 0.0)) throw ConfigError("stability-sweep: time steps must be positive");
      SchemeConfig scheme = cfg.scheme;
      scheme.dt = dt;
      SweepRow row{dt, steps, -std::numeric_limits<double>::infinity(), 0.0, 0.0, true};
      State state = init_state(phi0, scheme.potential);
      for (int n = 0; n < steps; ++n) {
        auto [next, report] = advance(cfg.equation, state, scheme);
        state = std::move(next);
        const double increase = report.energy_modified - report.energy_modified_prev;
        row.max_energy_increase = std::max(row.max_energy_increase, increase);
        row.tolerance = std::max(row.tolerance, report.energy_tolerance);
        row.max_relative_defect =
            std::max(row.max_relative_defect, report.dissipation_defect / report.energy_scale);
        if (increase > report.energy_tolerance) row.pass = false;
      }
      log << "dt = " << format_real(dt) << ": max energy increase "
          << format_real(row.max_energy_increase) << (row.pass ? " pass" : " FAIL") << '\n';
      all_pass = all_pass && row.pass;
      rows.push_back(row);
    }
    std::filesystem::create_directories(cfg.output_dir);
    write_sweep_csv(std::filesystem::path(cfg.output_dir) / "sweep.csv", rows);
    return static_cast<int>(all_pass ? kExitSuccess : kExitFailure);
  });
}

int cmd_check_potential(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const PotentialSpec& p = cfg.scheme.potential;
    std::vector<Check> checks;
    checks.push_back(guarded_check("parameters", [&] {
      p.validate();
      return Check{"parameters", true, std::string(to_string(p.kind))};
    }));
    checks.push_back(guarded_check("lower-bound", [&] { return check_lower_bound(p); }));
    checks.push_back(guarded_check("derivative", [&] { return check_derivative(p); }));
    checks.push_back(guarded_check("quadratization", [&] { return check_quadratization(p); }));
    checks.push_back(guarded_check("knot-continuity", [&] { return check_knots(p); }));
    for (double C0 : {1.0, 2.0}) {
      checks.push_back(guarded_check("lipschitz", [&] { return check_lipschitz(p, C0); }));
    }
    bool ok = true;
    for (const Check& c : checks) {
      log << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      ok = ok && c.pass;
    }
    return static_cast<int>(ok ? kExitSuccess : kExitFailure);
  });
}

} // namespace ieq
