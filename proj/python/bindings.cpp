// Python bindings. Fields cross the boundary as numpy arrays shaped like the
// grid ((n,) in 1D, (n1, n2) in 2D); everything else maps onto plain classes.

#include "ieq/allen_cahn.hpp"
#include "ieq/cahn_hilliard.hpp"
#include "ieq/commands.hpp"
#include "ieq/config.hpp"
#include "ieq/diagnostics.hpp"
#include "ieq/errors.hpp"
#include "ieq/spectral.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ieq;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> shape_of(const Grid& g) {
  if (g.dim() == 1) return {g.points(0)};
  return {g.points(0), g.points(1)};
}

Array to_numpy(const Field& f) {
  Array out(shape_of(f.grid()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

Field from_numpy(const Grid& g, const Array& a) {
  if (static_cast<std::size_t>(a.size()) != g.size()) {
    throw PreconditionError("array has " + std::to_string(a.size()) + " values, grid has " +
                            std::to_string(g.size()));
  }
  return Field(g, std::vector<double>(a.data(), a.data() + a.size()));
}

// Applies a scalar potential function elementwise, keeping the input shape.
template <double (*Fn)(const PotentialSpec&, double)>
Array vectorized(const PotentialSpec& p, const Array& x) {
  Array out(std::vector<py::ssize_t>(x.shape(), x.shape() + x.ndim()));
  const double* in = x.data();
  double* o = out.mutable_data();
  for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = Fn(p, in[i]);
  return out;
}

py::dict report_dict(const StepReport& r) {
  py::dict d;
  d["energy_modified"] = r.energy_modified;
  d["energy_modified_prev"] = r.energy_modified_prev;
  d["energy_original"] = r.energy_original;
  d["mass"] = r.mass;
  d["pcg_iterations"] = r.pcg_iterations;
  d["pcg_residual"] = r.pcg_residual;
  d["dissipation"] = r.dissipation;
  d["dissipation_defect"] = r.dissipation_defect;
  d["energy_scale"] = r.energy_scale;
  d["energy_tolerance"] = r.energy_tolerance;
  d["max_abs_phi"] = r.max_abs_phi;
  d["w"] = to_numpy(r.w_field);
  return d;
}

py::dict rate_dict(const RateFit& f) {
  py::dict d;
  d["defined"] = f.defined;
  d["rate"] = f.rate;
  d["intercept"] = f.intercept;
  d["r_squared"] = f.r_squared;
  return d;
}

} // namespace

PYBIND11_MODULE(ieqpy, m) {
  m.doc() = "IEQ time stepping for Cahn-Hilliard and Allen-Cahn flows";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<Grid>(m, "Grid")
      .def_static("line", &Grid::line, py::arg("n"), py::arg("length"))
      .def_static("plane", &Grid::plane, py::arg("n1"), py::arg("n2"), py::arg("length1"),
                  py::arg("length2"))
      .def_property_readonly("dim", &Grid::dim)
      .def_property_readonly("shape", [](const Grid& g) { return py::tuple(py::cast(shape_of(g))); })
      .def_property_readonly("size", &Grid::size)
      .def("length", &Grid::length, py::arg("axis"))
      .def("spacing", &Grid::spacing, py::arg("axis"))
      .def("coords", [](const Grid& g, int axis) {
        Array out(std::vector<py::ssize_t>{g.points(axis)});
        for (int i = 0; i < g.points(axis); ++i) out.mutable_data()[i] = g.coord(axis, i);
        return out;
      }, py::arg("axis"))
      .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
      .def("__repr__", [](const Grid& g) {
        std::ostringstream s;
        s << "Grid(dim=" << g.dim() << ", n=" << g.points(0);
        if (g.dim() == 2) s << "x" << g.points(1);
        s << ")";
        return s.str();
      });

  py::enum_<PotentialKind>(m, "PotentialKind")
      .value("DOUBLE_WELL", PotentialKind::DoubleWell)
      .value("FLORY_HUGGINS", PotentialKind::FloryHugginsRegularized)
      .value("ZERO", PotentialKind::Zero)
      .value("DOUBLE_WELL_LAGRANGE", PotentialKind::DoubleWellLagrange);

  py::class_<PotentialSpec>(m, "PotentialSpec")
      .def(py::init<>())
      .def_static("double_well", &PotentialSpec::double_well, py::arg("B") = 1.0)
      .def_static("flory_huggins", &PotentialSpec::flory_huggins, py::arg("theta") = 2.0,
                  py::arg("sigma") = 0.01, py::arg("A") = 1.0)
      .def_static("zero", &PotentialSpec::zero, py::arg("B") = 1.0)
      .def_static("double_well_lagrange", &PotentialSpec::double_well_lagrange)
      .def_readwrite("kind", &PotentialSpec::kind)
      .def_readwrite("theta", &PotentialSpec::theta)
      .def_readwrite("sigma", &PotentialSpec::sigma)
      .def_readwrite("A", &PotentialSpec::lower_bound_A)
      .def_readwrite("B", &PotentialSpec::shift_B)
      .def("validate", &PotentialSpec::validate)
      .def("F", &vectorized<eval_F>, py::arg("x"))
      .def("f", &vectorized<eval_f>, py::arg("x"))
      .def("df", &vectorized<eval_df>, py::arg("x"))
      .def("H", &vectorized<eval_H>, py::arg("x"))
      .def("U0", &vectorized<initial_U>, py::arg("x"))
      .def("lipschitz_bound", &lipschitz_bound_H, py::arg("C0"))
      .def("__repr__", [](const PotentialSpec& p) {
        return "PotentialSpec(" + std::string(to_string(p.kind)) + ")";
      });

  py::class_<PcgConfig>(m, "PcgConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &PcgConfig::rel_tol)
      .def_readwrite("abs_tol", &PcgConfig::abs_tol)
      .def_readwrite("max_iters", &PcgConfig::max_iters);

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init([](const PotentialSpec& p, double M, double epsilon, double dt) {
             SchemeConfig c;
             c.potential = p;
             c.mobility = M;
             c.epsilon = epsilon;
             c.dt = dt;
             return c;
           }),
           py::arg("potential") = PotentialSpec::double_well(), py::arg("M") = 1.0,
           py::arg("epsilon") = 1.0, py::arg("dt") = 1e-3)
      .def_readwrite("potential", &SchemeConfig::potential)
      .def_readwrite("M", &SchemeConfig::mobility)
      .def_readwrite("epsilon", &SchemeConfig::epsilon)
      .def_readwrite("dt", &SchemeConfig::dt)
      .def_readwrite("pcg", &SchemeConfig::pcg)
      .def_readwrite("spectral_preconditioner", &SchemeConfig::spectral_preconditioner)
      .def("validate", &SchemeConfig::validate);

  py::class_<State>(m, "State")
      .def_property_readonly("grid", [](const State& s) { return s.phi.grid(); })
      .def_property_readonly("phi", [](const State& s) { return to_numpy(s.phi); })
      .def_property_readonly("U", [](const State& s) { return to_numpy(s.U); })
      .def_readonly("t", &State::t)
      .def_readonly("step", &State::step);

  m.def("init_state", [](const Grid& g, const Array& phi0, const PotentialSpec& p) {
    return init_state(from_numpy(g, phi0), p);
  }, py::arg("grid"), py::arg("phi0"), py::arg("potential"));

  auto stepper = [](Equation eq) {
    return [eq](const State& s, const SchemeConfig& cfg) {
      std::pair<State, StepReport> out;
      {
        py::gil_scoped_release release;
        out = advance(eq, s, cfg);
      }
      return py::make_tuple(std::move(out.first), report_dict(out.second));
    };
  };
  m.def("ch_step", stepper(Equation::CahnHilliard), py::arg("state"), py::arg("config"),
        "One Cahn-Hilliard step; returns (state, report).");
  m.def("ac_step", stepper(Equation::AllenCahn), py::arg("state"), py::arg("config"),
        "One Allen-Cahn step; returns (state, report).");

  m.def("energy_modified", [](const State& s, double epsilon) {
    return energy_modified(s.phi, s.U, epsilon);
  }, py::arg("state"), py::arg("epsilon"));
  m.def("energy_original", [](const State& s, const SchemeConfig& cfg) {
    return energy_original(s.phi, cfg);
  }, py::arg("state"), py::arg("config"));
  m.def("u_consistency_defect", &u_consistency_defect, py::arg("state"), py::arg("potential"));

  m.def("laplacian", [](const Grid& g, const Array& u) {
    return to_numpy(laplacian(from_numpy(g, u)));
  }, py::arg("grid"), py::arg("u"));
  m.def("inv_neg_laplacian", [](const Grid& g, const Array& u) {
    return to_numpy(inv_neg_laplacian(from_numpy(g, u)));
  }, py::arg("grid"), py::arg("u"));

  m.def("convergence_study", [](const std::string& equation, const Grid& g, const Array& phi0,
                                const SchemeConfig& cfg, double T, std::vector<double> dts,
                                double dt_ref) {
    const Field phi = from_numpy(g, phi0);
    ConvergenceReport r;
    {
      py::gil_scoped_release release;
      r = convergence_study(equation_from_string(equation), phi, cfg, T, dts, dt_ref);
    }
    py::dict d;
    d["dts"] = r.dts;
    d["errors_phi_l2"] = r.errors_phi_l2;
    d["errors_phi_h1"] = r.errors_phi_h1;
    d["errors_U_l2"] = r.errors_U_l2;
    d["errors_w_integrated"] = r.errors_w_integrated;
    d["errors_combined"] = r.errors_combined;
    d["rate_phi_l2"] = rate_dict(r.rate_phi_l2);
    d["rate_phi_h1"] = rate_dict(r.rate_phi_h1);
    d["rate_U_l2"] = rate_dict(r.rate_U_l2);
    d["rate_w"] = rate_dict(r.rate_w);
    d["rate_combined"] = rate_dict(r.rate_combined);
    d["inconclusive"] = r.inconclusive;
    return d;
  }, py::arg("equation"), py::arg("grid"), py::arg("phi0"), py::arg("config"), py::arg("T"),
     py::arg("dts"), py::arg("dt_ref"));

  m.def("check_lipschitz_H", [](const PotentialSpec& p, double C0, int samples,
                                std::uint64_t seed) {
    const LipschitzCheck r = check_lipschitz_H(p, C0, samples, seed);
    py::dict d;
    d["max_observed_slope"] = r.max_observed_slope;
    d["bound"] = r.bound;
    d["pass"] = r.pass;
    return d;
  }, py::arg("potential"), py::arg("C0"), py::arg("samples") = 10000,
     py::arg("seed") = 1234567);

  m.def("simulate", [](const std::string& config_path, const std::string& output_dir,
                       bool strict_energy) {
    RunConfig cfg = load_run_config(config_path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    std::ostringstream log;
    int code;
    {
      py::gil_scoped_release release;
      code = cmd_simulate(cfg, {strict_energy}, log);
    }
    return py::make_tuple(code, log.str());
  }, py::arg("config_path"), py::arg("output_dir") = "", py::arg("strict_energy") = false,
     "Runs the simulate command; returns (exit_code, log).");
}
