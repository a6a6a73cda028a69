#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "catsim/config.hpp"
#include "catsim/diagnostics.hpp"
#include "catsim/dynamics.hpp"
#include "catsim/fock.hpp"
#include "catsim/models.hpp"
#include "catsim/observables.hpp"
#include "catsim/phasespace.hpp"
#include "catsim/scenario.hpp"

namespace py = pybind11;
using namespace catsim;

namespace {

Subsystem subsystem(const std::string& s) {
  if (s == "a" || s == "A") return Subsystem::A;
  if (s == "b" || s == "B") return Subsystem::B;
  throw ValidationError("subsystem must be 'a' or 'b'");
}

CatParity parity(const std::string& s) {
  if (s == "even") return CatParity::Even;
  if (s == "odd") return CatParity::Odd;
  throw ValidationError("parity must be 'even' or 'odd'");
}

DensityMatrix density(const Matrix& m, std::optional<BipartiteDims> dims = std::nullopt) {
  return DensityMatrix::from_matrix(m, dims);
}

SteadyStateMethod method(const std::string& s) {
  if (s == "kernel") return SteadyStateMethod::Kernel;
  if (s == "propagate") return SteadyStateMethod::Propagate;
  throw ValidationError("method must be 'kernel' or 'propagate'");
}

ScenarioConfig parse_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "catsim core: truncated Fock-space open-system simulator";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("set_warnings_enabled", &set_warnings_enabled);

  // fock algebra
  m.def(
      "ladder_operators",
      [](int n) {
        const auto ops = ladder_operators(FockSpace(n));
        py::dict d;
        d["annihilation"] = ops.annihilation;
        d["creation"] = ops.creation;
        d["number"] = ops.number;
        d["parity"] = ops.parity;
        return d;
      },
      py::arg("n"));
  m.def("displacement", [](cplx alpha, int n) { return displacement(alpha, FockSpace(n)); }, py::arg("alpha"),
        py::arg("n"));
  m.def("displacement_element", &displacement_element, py::arg("beta"), py::arg("m"), py::arg("n"));
  m.def("tensor_product", &tensor_product);
  m.def(
      "hermitian_eigensystem",
      [](const Matrix& mat) {
        auto es = hermitian_eigensystem(mat);
        return py::make_tuple(es.values, es.vectors);
      },
      py::arg("m"));
  m.def("matrix_exponential", &matrix_exponential);
  m.def(
      "partial_trace",
      [](const Matrix& rho, std::pair<int, int> dims, const std::string& keep) {
        const BipartiteDims d{dims.first, dims.second};
        return partial_trace(density(rho, d), d, subsystem(keep)).matrix();
      },
      py::arg("rho"), py::arg("dims"), py::arg("keep"));
  m.def(
      "partial_transpose",
      [](const Matrix& rho, std::pair<int, int> dims, const std::string& moved) {
        return partial_transpose(rho, BipartiteDims{dims.first, dims.second}, subsystem(moved));
      },
      py::arg("rho"), py::arg("dims"), py::arg("moved") = "b");

  // models
  py::class_<ModeParams>(m, "ModeParams")
      .def(py::init([](double detuning, double U, cplx G, double gamma, double eta) {
             ModeParams p{detuning, U, G, gamma, eta};
             p.validate();
             return p;
           }),
           py::kw_only(), py::arg("detuning") = 0.0, py::arg("U") = 0.0, py::arg("G") = cplx{}, py::arg("gamma") = 0.0,
           py::arg("eta") = 0.0)
      .def_readwrite("detuning", &ModeParams::detuning)
      .def_readwrite("U", &ModeParams::self_interaction)
      .def_readwrite("G", &ModeParams::drive)
      .def_readwrite("gamma", &ModeParams::single_photon_decay)
      .def_readwrite("eta", &ModeParams::two_photon_decay)
      .def("__repr__", [](const ModeParams& p) {
        return "ModeParams(detuning=" + format_double(p.detuning) + ", U=" + format_double(p.self_interaction) +
               ", G=(" + format_double(p.drive.real()) + (p.drive.imag() < 0 ? "" : "+") +
               format_double(p.drive.imag()) + "j), gamma=" + format_double(p.single_photon_decay) +
               ", eta=" + format_double(p.two_photon_decay) + ")";
      });

  py::class_<SystemModel>(m, "SystemModel")
      .def_readonly("hamiltonian", &SystemModel::hamiltonian)
      .def_readonly("jumps", &SystemModel::jumps)
      .def_readonly("dim", &SystemModel::dim)
      .def_property_readonly("bipartite", [](const SystemModel& s) -> std::optional<std::pair<int, int>> {
        if (!s.bipartite) return std::nullopt;
        return std::pair{s.bipartite->na, s.bipartite->nb};
      });

  m.def("build_one_mode", &build_one_mode, py::arg("params"), py::arg("n"));
  m.def(
      "build_two_mode",
      [](const ModeParams& pa, const ModeParams& pb, const std::string& kind, double g, int na, int nb) {
        return build_two_mode(pa, pb, {parse_coupling_kind(kind), g}, na, nb);
      },
      py::arg("pa"), py::arg("pb"), py::arg("coupling"), py::arg("strength"), py::arg("na"), py::arg("nb"));
  m.def("coherent_state", [](cplx a, int n) { return coherent_state(a, n).vector(); }, py::arg("alpha"), py::arg("n"));
  m.def(
      "cat_state", [](cplx xi, const std::string& p, int n) { return cat_state(xi, parity(p), n).vector(); },
      py::arg("xi"), py::arg("parity"), py::arg("n"));
  m.def("fock_state", [](int k, int n) { return fock_state(k, n).vector(); }, py::arg("k"), py::arg("n"));
  m.def("steady_alpha", &steady_alpha, py::arg("params"));

  // dynamics
  m.def("lindblad_rhs", &lindblad_rhs, py::arg("model"), py::arg("rho"));
  m.def("liouvillian_matrix", &liouvillian_matrix, py::arg("model"));
  m.def(
      "evolve",
      [](const SystemModel& model, const Matrix& rho0, std::vector<double> times, double rel_tol, double abs_tol) {
        const auto r0 = density(rho0, model.bipartite);
        IntegratorOptions opt;
        opt.rel_tol = rel_tol;
        opt.abs_tol = abs_tol;
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = evolve(model, r0, times, opt);
        }
        std::vector<Matrix> states;
        std::vector<double> drift;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
          states.push_back(traj.states[i].matrix());
          drift.push_back(traj.diagnostics[i].trace_drift);
        }
        return py::make_tuple(traj.times, states, drift);
      },
      py::arg("model"), py::arg("rho0"), py::arg("times"), py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-10);
  m.def(
      "steady_state",
      [](const SystemModel& model, const std::string& name, std::optional<Matrix> rho0, double tol) {
        const SteadyStateMethod meth = method(name);
        std::optional<DensityMatrix> r0;
        if (rho0) r0 = density(*rho0, model.bipartite);
        py::gil_scoped_release release;
        return steady_state(model, meth, r0, tol).matrix();
      },
      py::arg("model"), py::arg("method"), py::arg("rho0") = py::none(), py::arg("tol") = 1e-8);

  // observables
  m.def(
      "expectation", [](const Matrix& op, const Matrix& rho) { return expectation(op, density(rho)); }, py::arg("op"),
      py::arg("rho"));
  m.def(
      "von_neumann_entropy", [](const Matrix& rho) { return von_neumann_entropy(density(rho)); }, py::arg("rho"));
  m.def("purity", [](const Matrix& rho) { return purity(density(rho)); }, py::arg("rho"));
  m.def(
      "fidelity_pure", [](const Vector& psi, const Matrix& rho) { return fidelity_pure(StateVector(psi), density(rho)); },
      py::arg("psi"), py::arg("rho"));
  m.def(
      "negativity",
      [](const Matrix& rho, std::pair<int, int> dims) {
        const BipartiteDims d{dims.first, dims.second};
        return negativity(density(rho, d), d);
      },
      py::arg("rho"), py::arg("dims"));
  m.def(
      "mutual_information",
      [](const Matrix& rho, std::pair<int, int> dims) {
        const BipartiteDims d{dims.first, dims.second};
        return mutual_information(density(rho, d), d);
      },
      py::arg("rho"), py::arg("dims"));
  m.def(
      "dominant_eigencomponents",
      [](const Matrix& rho, int k) {
        std::vector<std::pair<double, Vector>> out;
        for (const auto& c : dominant_eigencomponents(density(rho), k)) out.emplace_back(c.weight, c.state.vector());
        return out;
      },
      py::arg("rho"), py::arg("k"));

  // phase space
  m.def(
      "wigner",
      [](const Matrix& rho, std::vector<double> re, std::vector<double> im) {
        return wigner(density(rho), re, im).values;
      },
      py::arg("rho"), py::arg("re"), py::arg("im"));
  m.def(
      "wigner_cat_analytic",
      [](cplx xi, const std::string& p, std::vector<double> re, std::vector<double> im) {
        return wigner_cat_analytic(xi, parity(p), re, im).values;
      },
      py::arg("xi"), py::arg("parity"), py::arg("re"), py::arg("im"));
  m.def(
      "quadrature_distribution",
      [](const Matrix& rho, double phi, std::vector<double> xs) {
        return quadrature_distribution(density(rho), phi, xs).density;
      },
      py::arg("rho"), py::arg("phi"), py::arg("xs"));
  m.def(
      "joint_quadrature_distribution",
      [](const Matrix& rho, std::pair<int, int> dims, std::vector<double> xa, std::vector<double> xb) {
        const BipartiteDims d{dims.first, dims.second};
        return joint_quadrature_distribution(density(rho, d), d, xa, xb);
      },
      py::arg("rho"), py::arg("dims"), py::arg("xa"), py::arg("xb"));

  // scenarios
  m.def("config_schema", [] { return std::string(config_schema()); });
  m.def(
      "resolve_config", [](const std::string& text) { return to_json(parse_text(text)).dump(); },
      py::arg("config_json"));
  m.def(
      "run_scenario",
      [](const std::string& text, const std::string& out_dir, bool sweep) {
        const ScenarioConfig c = parse_text(text);
        RunOptions opt;
        opt.out_dir = out_dir;
        opt.quiet = true;
        RunSummary s;
        {
          py::gil_scoped_release release;
          s = sweep ? run_sweep(c, opt) : run_scenario(c, opt);
        }
        std::vector<std::string> files;
        for (const auto& f : s.files) files.push_back(f.generic_string());
        py::dict d;
        d["ok"] = s.ok;
        d["status"] = s.status;
        d["message"] = s.message;
        d["files"] = files;
        return d;
      },
      py::arg("config_json"), py::arg("out_dir"), py::arg("sweep") = false);

  m.attr("__version__") = CATSIM_VERSION;
}
