#include "ieq/diagnostics.hpp"

#include "ieq/allen_cahn.hpp"
#include "ieq/cahn_hilliard.hpp"
#include "ieq/errors.hpp"
#include "ieq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>
#include <string>

namespace ieq {

namespace {

// Number of dt steps in `span`; throws unless span is an integer multiple.
long whole_steps(double span, double dt, const char* what) {
  const double ratio = span / dt;
  const long n = std::lround(ratio);
  if (n < 0 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << what << ": " << span << " is not an integer multiple of " << dt;
    throw PreconditionError(msg.str());
  }
  return n;
}

double h1_squared(const Field& e) {
  const double l2 = norm_l2(e);
  const double g = seminorm_h1(e);
  return l2 * l2 + g * g;
}

} // namespace

std::string_view to_string(Equation eq) {
  return eq == Equation::CahnHilliard ? "cahn-hilliard" : "allen-cahn";
}

Equation equation_from_string(std::string_view name) {
  if (name == "cahn-hilliard") return Equation::CahnHilliard;
  if (name == "allen-cahn") return Equation::AllenCahn;
  throw ConfigError("unknown equation '" + std::string(name) + "'");
}

std::pair<State, StepReport> advance(Equation eq, const State& state, const SchemeConfig& cfg) {
  return eq == Equation::CahnHilliard ? ch_step(state, cfg) : ac_step(state, cfg);
}

ErrorNorms error_norms(const Field& a, const Field& b) {
  const Field e = a - b;
  return {norm_l2(e), std::sqrt(h1_squared(e)), norm_linf(e)};
}

double u_consistency_defect(const State& state, const PotentialSpec& spec) {
  const Field exact = map(state.phi, [&](double x) { return initial_U(spec, x); });
  return norm_l2(state.U - exact);
}

std::vector<Checkpoint> run_reference(Equation eq, const Field& phi0, const SchemeConfig& cfg,
                                      double T, double dt_ref, std::span<const double> checkpoints) {
  if (!(dt_ref > 0.0) || !(T > 0.0)) throw PreconditionError("run_reference: T and dt_ref must be > 0");
  const long total = whole_steps(T, dt_ref, "run_reference: final time");

  std::vector<long> wanted;
  for (double t : checkpoints) {
    const long n = whole_steps(t, dt_ref, "run_reference: checkpoint");
    if (n > total) throw PreconditionError("run_reference: checkpoint beyond final time");
    wanted.push_back(n);
  }
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  SchemeConfig fine = cfg;
  fine.dt = dt_ref;
  std::vector<Checkpoint> out;
  out.reserve(wanted.size());

  State state = init_state(phi0, cfg.potential);
  auto next = wanted.begin();
  if (next != wanted.end() && *next == 0) {
    out.push_back({0.0, state, Field()});
    ++next;
  }
  for (long n = 1; n <= total && next != wanted.end(); ++n) {
    auto [after, report] = advance(eq, state, fine);
    state = std::move(after);
    if (n == *next) {
      out.push_back({static_cast<double>(n) * dt_ref, state, std::move(report.w_field)});
      ++next;
    }
  }
  return out;
}

RateFit fit_rate(std::span<const double> dts, std::span<const double> errors) {
  RateFit fit;
  if (dts.size() != errors.size() || dts.size() < 2) return fit;
  const double floor = 1e-13;
  if (std::any_of(errors.begin(), errors.end(), [&](double e) { return !(e > floor); })) return fit;

  const double n = static_cast<double>(dts.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    const double x = std::log(dts[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) return fit;
  fit.rate = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.rate * sx) / n;

  const double ybar = sy / n;
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    const double y = std::log(errors[i]);
    const double yhat = fit.intercept + fit.rate * std::log(dts[i]);
    ss_tot += (y - ybar) * (y - ybar);
    ss_res += (y - yhat) * (y - yhat);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.defined = true;
  return fit;
}

ConvergenceReport convergence_study(Equation eq, const Field& phi0, const SchemeConfig& cfg,
                                    double T, std::span<const double> dts, double dt_ref) {
  if (dts.size() < 2) throw PreconditionError("convergence_study: need at least two step sizes");
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (std::abs(dts[i - 1] / dts[i] - 2.0) > 1e-9) {
      throw PreconditionError("convergence_study: step sizes must halve successively");
    }
  }
  const double dt_min = dts.back();
  if (dt_ref > dt_min / 8.0 * (1.0 + 1e-12)) {
    throw PreconditionError("convergence_study: dt_ref must be at most min(dts)/8");
  }
  whole_steps(dt_min, dt_ref, "convergence_study: dt_ref");
  for (double dt : dts) whole_steps(T, dt, "convergence_study: final time");

  // Every coarse time level is a multiple of the smallest coarse step.
  const long levels = whole_steps(T, dt_min, "convergence_study: final time");
  std::vector<double> times;
  for (long n = 0; n <= levels; ++n) times.push_back(static_cast<double>(n) * dt_min);
  const std::vector<Checkpoint> reference = run_reference(eq, phi0, cfg, T, dt_ref, times);

  struct Row {
    double phi_l2, phi_h1, U_l2, w_acc;
  };
  auto run_one = [&](double dt) {
    SchemeConfig coarse = cfg;
    coarse.dt = dt;
    const long steps = whole_steps(T, dt, "convergence_study");
    const long stride = whole_steps(dt, dt_min, "convergence_study");
    State state = init_state(phi0, cfg.potential);
    double w_acc = 0.0;
    for (long n = 1; n <= steps; ++n) {
      auto [after, report] = advance(eq, state, coarse);
      state = std::move(after);
      if (eq == Equation::CahnHilliard) {
        w_acc += dt * h1_squared(report.w_field - reference[n * stride].w);
      }
    }
    const State& ref = reference.back().state;
    const ErrorNorms ephi = error_norms(state.phi, ref.phi);
    return Row{ephi.l2, ephi.h1, norm_l2(state.U - ref.U), w_acc};
  };

  std::vector<std::future<Row>> jobs;
  for (double dt : dts) jobs.push_back(std::async(std::launch::async, run_one, dt));

  ConvergenceReport rep;
  rep.dts.assign(dts.begin(), dts.end());
  for (auto& job : jobs) {
    const Row row = job.get();
    rep.errors_phi_l2.push_back(row.phi_l2);
    rep.errors_phi_h1.push_back(row.phi_h1);
    rep.errors_U_l2.push_back(row.U_l2);
    rep.errors_w_integrated.push_back(row.w_acc);
    rep.errors_combined.push_back(std::sqrt(row.phi_h1 * row.phi_h1 + row.U_l2 * row.U_l2));
  }

  std::vector<double> w_root;
  for (double v : rep.errors_w_integrated) w_root.push_back(std::sqrt(v));
  rep.rate_phi_l2 = fit_rate(rep.dts, rep.errors_phi_l2);
  rep.rate_phi_h1 = fit_rate(rep.dts, rep.errors_phi_h1);
  rep.rate_U_l2 = fit_rate(rep.dts, rep.errors_U_l2);
  rep.rate_w = fit_rate(rep.dts, w_root);
  rep.rate_combined = fit_rate(rep.dts, rep.errors_combined);
  for (const RateFit* f :
       {&rep.rate_phi_l2, &rep.rate_phi_h1, &rep.rate_U_l2, &rep.rate_w, &rep.rate_combined}) {
    if (f->defined && f->r_squared < 0.98) rep.inconclusive = true;
  }
  return rep;
}

LipschitzCheck check_lipschitz_H(const PotentialSpec& spec, double C0, int samples,
                                 std::uint64_t seed) {
  if (!(C0 > 0.0)) throw PreconditionError("check_lipschitz_H: C0 must be > 0");
  if (samples < 1000) throw PreconditionError("check_lipschitz_H: need at least 1000 samples");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-C0, C0);
  LipschitzCheck out;
  out.bound = lipschitz_bound_H(spec, C0);
  for (int i = 0; i < samples; ++i) {
    const double x = dist(rng);
    const double y = dist(rng);
    if (std::abs(x - y) < 1e-12) continue;
    const double slope = std::abs(eval_H(spec, x) - eval_H(spec, y)) / std::abs(x - y);
    out.max_observed_slope = std::max(out.max_observed_slope, slope);
  }
  out.pass = out.max_observed_slope <= out.bound;
  return out;
}

double gradient_lipschitz_ratio(const PotentialSpec& spec, const Field& a, const Field& b) {
  const Field dH = quadratized_slope(a, spec) - quadratized_slope(b, spec);
  const Field d = a - b;
  const double denom = norm_l2(d) + seminorm_h1(d);
  if (!(denom > 0.0)) return 0.0;
  return seminorm_h1(dH) / denom;
}

} // namespace ieq
