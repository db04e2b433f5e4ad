#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "darkbell/commands.hpp"
#include "darkbell/error.hpp"

namespace py = pybind11;
using namespace darkbell;

namespace {

ModelParams params_from_dict(const py::dict& d) {
  ModelParams p;
  for (const auto& [key, value] : d) {
    const auto name = py::cast<std::string>(key);
    const auto param = param_from_string(name);
    if (!param) throw py::key_error("unknown parameter '" + name + "'");
    p.set(*param, py::cast<double>(value));
  }
  return p;
}

py::dict params_to_dict(const ModelParams& p) {
  py::dict d;
  for (Param q : kAllParams) d[py::str(std::string(to_string(q)))] = p.get(q);
  return d;
}

DarkFamily make_family(const std::string& kind, int sign, bool stark) {
  const auto k = family_from_string(kind);
  if (!k) throw py::value_error("unknown family '" + kind + "'");
  return DarkFamily{*k, sign, stark};
}

Schedule preset_or_throw(const std::string& name) {
  auto s = find_preset(name);
  if (!s) throw py::value_error("unknown preset '" + name + "'");
  return *s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-qubit Rabi(-Stark) dark-state simulator";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.attr("DEFAULT_NMAX") = HilbertSpace::kDefaultNMax;

  m.def("dimension", [](int n_max) { return HilbertSpace(n_max).dim(); }, py::arg("n_max"));
  m.def("basis_labels", [](int n_max) {
    const HilbertSpace space(n_max);
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < space.dim(); ++i) tags.push_back(space.label_of(i).tag());
    return tags;
  }, py::arg("n_max"));

  m.def("hamiltonian", [](const py::dict& params, int n_max) {
    return Eigen::MatrixXd(build_hamiltonian(params_from_dict(params), HilbertSpace(n_max)).dense());
  }, py::arg("params"), py::arg("n_max") = HilbertSpace::kDefaultNMax,
        "Dense Hamiltonian matrix in the (n, s1, s2) basis.");

  m.def("check_conditions", [](const py::dict& params, const std::string& family, int sign, bool stark) {
    const auto report = check_conditions(params_from_dict(params), make_family(family, sign, stark));
    py::dict out;
    for (const auto& c : report.conditions) out[py::str(c.name)] = c.residual;
    return out;
  }, py::arg("params"), py::arg("family"), py::arg("sign") = 1, py::arg("stark") = false);

  m.def("dark_state", [](const py::dict& params, const std::string& family, int sign, bool stark, int n_max) {
    const HilbertSpace space(n_max);
    return Eigen::VectorXcd(
        construct_dark_state(params_from_dict(params), make_family(family, sign, stark), space)
            .state.amplitudes());
  }, py::arg("params"), py::arg("family"), py::arg("sign") = 1, py::arg("stark") = false,
        py::arg("n_max") = HilbertSpace::kDefaultNMax);

  m.def("boundary_matrix", [](const py::dict& params, const std::string& sector) {
    return Eigen::MatrixXd(boundary_matrix(params_from_dict(params), sector_from_string(sector)));
  }, py::arg("params"), py::arg("sector"));

  m.def("eigh_sector", [](const py::dict& params, const std::string& sector, int n_max, int n_levels) {
    const auto r = diagonalize_sector(params_from_dict(params), sector_from_string(sector),
                                      HilbertSpace(n_max), n_levels);
    return py::make_tuple(r.values, r.vectors);
  }, py::arg("params"), py::arg("sector"), py::arg("n_max") = HilbertSpace::kDefaultNMax,
        py::arg("n_levels") = -1);

  m.def("spectrum_preset", [](const std::string& name, int n_max) {
    auto spec = spectrum_preset(name);
    if (!spec) throw py::value_error("unknown spectrum preset '" + name + "'");
    const auto r = sweep(*spec, HilbertSpace(n_max));
    py::dict out;
    out["axis"] = r.axis;
    out["eigenvalues"] = r.eigenvalues;
    out["dark_residual"] = r.dark_residual;
    out["tracked_energy"] = r.tracked_energy;
    return out;
  }, py::arg("name"), py::arg("n_max") = HilbertSpace::kDefaultNMax);

  m.def("presets", [] {
    std::vector<std::string> names;
    for (const auto& s : builtin_presets()) names.push_back(s.name());
    return names;
  });

  m.def("preset_duration", [](const std::string& name) { return preset_or_throw(name).duration(); },
        py::arg("name"));

  m.def("params_at", [](const std::string& preset, double t) {
    return params_to_dict(preset_or_throw(preset).params_at(t));
  }, py::arg("preset"), py::arg("t"));

  m.def("evolve", [](const std::string& preset, int n_max, double rtol, double atol, int samples,
                     std::optional<double> duration) {
    Schedule s = preset_or_throw(preset);
    if (duration) s.set_duration(*duration);
    EvolutionSpec spec{s, std::nullopt, std::nullopt, {}, samples};
    spec.options.rtol = rtol;
    spec.options.atol = atol;
    EvolutionTrace tr;
    {
      py::gil_scoped_release release;
      tr = evolve(spec, HilbertSpace(n_max));
    }
    py::dict out;
    out["t"] = tr.times;
    out["population_labels"] = tr.population_labels;
    out["populations"] = tr.populations;
    out["fidelity_full"] = tr.fidelity_full;
    out["fidelity_qubits"] = tr.fidelity_qubits;
    out["norm_error"] = tr.norm_error;
    out["energy"] = tr.energy;
    out["final_fidelity"] = tr.final_fidelity();
    out["final_state"] = Eigen::VectorXcd(tr.final_state->amplitudes());
    return out;
  }, py::arg("preset"), py::arg("n_max") = HilbertSpace::kDefaultNMax, py::arg("rtol") = 1e-10,
        py::arg("atol") = 1e-12, py::arg("samples") = 200, py::arg("duration") = py::none());

  m.def("reduced_qubit_fidelity", [](const Eigen::VectorXcd& amplitudes, const std::string& bell) {
    const auto b = bell_from_string(bell);
    if (!b) throw py::value_error("unknown Bell state '" + bell + "'");
    if (amplitudes.size() % 4 != 0 || amplitudes.size() < 12) throw py::value_error("bad state length");
    const HilbertSpace space(static_cast<int>(amplitudes.size() / 4) - 1);
    return reduced_qubit_fidelity(StateVector(space, amplitudes), *b);
  }, py::arg("amplitudes"), py::arg("bell"));

  m.def("physical_time_ns", &physical_time_ns, py::arg("t"), py::arg("freq_ghz"));
}
