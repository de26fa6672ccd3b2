#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <ffising/bdg.hpp>
#include <ffising/dynamics.hpp>
#include <ffising/error.hpp>
#include <ffising/floquet.hpp>
#include <ffising/gaussian.hpp>
#include <ffising/observables.hpp>
#include <ffising/thermal.hpp>
#include <ffising/uniform.hpp>
#include <ffising/version.hpp>

namespace py = pybind11;
using namespace ffising;

namespace {

StepPolicy policy(const std::string& stepper, double dt_max) {
  StepPolicy p;
  if (stepper == "exp")
    p.stepper = Stepper::exp_midpoint;
  else if (stepper != "rk4")
    throw Error(Errc::invalid_input, "stepper must be 'rk4' or 'exp'");
  p.dt_max = dt_max;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Free-fermion transverse-field Ising chain";
  m.attr("__version__") = kVersion;

  // messages carry the error code as a prefix, e.g. "no-bound-state: ..."
  py::register_exception<Error>(m, "FfisingError", PyExc_RuntimeError);

  py::enum_<Boundary>(m, "Boundary").value("open", Boundary::open).value("periodic", Boundary::periodic);
  py::enum_<Sector>(m, "Sector").value("even", Sector::even).value("odd", Sector::odd);

  py::class_<ChainSpec>(m, "ChainSpec")
      .def(py::init<>())
      .def_readwrite("L", &ChainSpec::L)
      .def_readwrite("J", &ChainSpec::J)
      .def_readwrite("kappa", &ChainSpec::kappa)
      .def_readwrite("h", &ChainSpec::h)
      .def_readwrite("bc", &ChainSpec::bc)
      .def_readwrite("seed", &ChainSpec::seed)
      .def("validate", &ChainSpec::validate)
      .def("to_json", [](const ChainSpec& s) { return to_json(s); })
      .def_static("from_json", &chain_from_json);

  m.def("make_uniform", &make_uniform, py::arg("L"), py::arg("J"), py::arg("kappa"), py::arg("h"),
        py::arg("bc") = Boundary::periodic);
  m.def("make_disordered", &make_disordered, py::arg("L"), py::arg("J_range"), py::arg("h_range"),
        py::arg("kappa"), py::arg("seed"), py::arg("bc") = Boundary::periodic);

  py::class_<BdGMatrix>(m, "BdGMatrix")
      .def_readonly("A", &BdGMatrix::A)
      .def_readonly("B", &BdGMatrix::B)
      .def_readonly("sector", &BdGMatrix::sector)
      .def("full", &BdGMatrix::full);
  m.def("assemble_bdg", &assemble_bdg, py::arg("spec"), py::arg("sector") = Sector::even);

  py::class_<BogoliubovBasis>(m, "BogoliubovBasis")
      .def_readonly("U", &BogoliubovBasis::U)
      .def_readonly("V", &BogoliubovBasis::V)
      .def_readonly("eps", &BogoliubovBasis::eps)
      .def_readonly("sector", &BogoliubovBasis::sector)
      .def_property_readonly("vacuum_energy", &BogoliubovBasis::vacuum_energy);
  m.def("diagonalize", &diagonalize);
  m.def("excite", &excite);
  m.def("ipr", &ipr);
  m.def("impurity_bound_states", [](int L, double J, double h, double h_imp) {
    const ImpurityBoundStates r = impurity_bound_states(L, J, h, h_imp);
    py::dict d;
    d["lower"] = r.lower;
    d["upper"] = r.upper;
    d["lower_shift"] = r.lower_shift;
    d["upper_shift"] = r.upper_shift;
    d["lower_formula"] = r.lower_formula;
    d["upper_formula"] = r.upper_formula;
    d["lower_mass_formula"] = r.lower_mass_formula;
    d["upper_mass_formula"] = r.upper_mass_formula;
    return d;
  });

  m.def("epsilon_k", &epsilon_k, py::arg("k"), py::arg("J"), py::arg("h"), py::arg("kappa"));
  m.def("sector_ground_energy", &sector_ground_energy);
  m.def("sector_gap", &sector_gap, py::arg("L"), py::arg("J"), py::arg("h"), py::arg("kappa"));
  m.def("winding_index", &winding_index, py::arg("J"), py::arg("h"), py::arg("kappa"));

  py::class_<GroundState>(m, "GroundState")
      .def_readonly("basis", &GroundState::basis)
      .def_readonly("energy", &GroundState::energy)
      .def_readonly("sector", &GroundState::sector)
      .def_readonly("excited", &GroundState::excited);
  m.def("sector_ground_state", &sector_ground_state);
  m.def("physical_ground_state", &physical_ground_state);

  m.def("xx_correlator", [](const BogoliubovBasis& b, int j1, int j2) {
    return xx_correlator(green_functions(b), j1, j2);
  });
  m.def("transverse_magnetization", [](const BogoliubovBasis& b, int j) {
    return transverse_magnetization(green_functions(b), j);
  });
  m.def("entanglement_entropy", [](const BogoliubovBasis& b, int start, int length) {
    return entanglement_entropy(majorana_correlation(green_functions(b)), {start, length}).entropy;
  }, py::arg("basis"), py::arg("start"), py::arg("length"));

  m.def("onishi_overlap_sq", &onishi_overlap_sq);
  m.def("excited_overlap_sq", [](const BogoliubovBasis& b0, const BogoliubovBasis& b1, std::vector<int> occ) {
    return excited_overlap_sq(b0, b1, {std::move(occ)});
  });
  m.def("pfaffian", py::overload_cast<const CMat&>(&pfaffian));

  m.def("anneal", [](const ChainSpec& spec, double h_from, double h_to, double tau, int samples,
                     const std::string& stepper, double dt_max) {
    AnnealOptions opt;
    opt.samples = samples;
    opt.policy = policy(stepper, dt_max);
    const Trajectory tr = anneal(spec, Schedule::linear(h_from, h_to, tau), opt);
    py::dict d;
    d["t"] = tr.t;
    d["rho"] = tr.rho;
    d["energy"] = tr.energy;
    d["max_drift"] = tr.max_drift;
    return d;
  }, py::arg("spec"), py::arg("h_from"), py::arg("h_to"), py::arg("tau"), py::arg("samples") = 2,
     py::arg("stepper") = "exp", py::arg("dt_max") = 0.5);

  m.def("floquet", [](const ChainSpec& spec, double h_mean, double amplitude, double tau) {
    FloquetOptions opt;
    opt.policy.stepper = Stepper::exp_midpoint;
    const FloquetSpectrum fs = floquet_analysis(spec, Schedule::cosine(h_mean, amplitude, tau), tau, opt);
    py::dict d;
    d["quasi"] = Vec(fs.quasi);
    d["residual"] = vacuum_periodicity_residual(fs);
    d["unitarity_defect"] = fs.unitarity_defect;
    d["pairing_defect"] = fs.pairing_defect;
    return d;
  });

  m.def("thermal_energy_density", [](const ChainSpec& s, double beta) {
    return energy_density(make_thermal_context(s, beta));
  });
  m.def("log_partition_function", [](const ChainSpec& s, double beta) {
    return log_partition_function(make_thermal_context(s, beta));
  });
}
