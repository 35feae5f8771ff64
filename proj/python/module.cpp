// Python bindings exposing the main operations: exact solutions, travelling
// waves, and the configured simulation runner.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hsint/harness.hpp"
#include "hsint/waves.hpp"

namespace py = pybind11;

namespace {

hsint::WaveSpec spec_from_args(const std::string& system, const py::kwargs& kwargs) {
    hsint::WaveSpec spec;
    if (system == "mhs") {
        spec.system = hsint::WaveSystem::Mhs;
        spec.omega = kwargs["omega"].cast<double>();
        spec.trough = kwargs["m"].cast<double>();
        spec.crest = kwargs["M"].cast<double>();
    } else if (system == "hs2") {
        spec.system = hsint::WaveSystem::Hs2;
        spec.b = kwargs["b"].cast<double>();
        spec.trough = kwargs["z"].cast<double>();
        spec.crest = kwargs["Z"].cast<double>();
    } else {
        throw py::value_error("system must be 'mhs' or 'hs2'");
    }
    spec.speed = kwargs["c"].cast<double>();
    return spec;
}

py::dict wave_to_dict(const hsint::TravellingWave& wave) {
    py::dict out;
    out["period"] = wave.period;
    std::vector<double> x;
    for (int i = 0; i < wave.grid.count; ++i) x.push_back(wave.grid.node(i));
    out["x"] = x;
    out["phi"] = wave.phi.values;
    out["phi_x"] = wave.phi_x.values;
    if (wave.psi) {
        out["psi"] = wave.psi->values;
        out["a"] = wave.a;
    }
    return out;
}

py::dict run_from_dict(const py::dict& config) {
    hsint::ConfigEntries entries;
    for (auto item : config)
        entries.emplace_back(py::str(item.first).cast<std::string>(),
                             py::str(item.second).cast<std::string>());
    const hsint::RunConfig cfg = hsint::config_from_entries(entries);
    const hsint::RunResult result = hsint::run_simulation(cfg);

    py::dict out;
    std::vector<double> t, h1, h2, mean_u;
    for (const auto& row : result.series) {
        t.push_back(row.t);
        h1.push_back(row.h1);
        h2.push_back(row.h2);
        mean_u.push_back(row.mean_u);
    }
    out["t"] = t;
    out["H1"] = h1;
    out["H2"] = h2;
    out["mean_u"] = mean_u;

    const auto& last = result.snapshots.back();
    py::dict profile;
    profile["t"] = last.t;
    profile["x"] = last.x;
    profile["u"] = last.u;
    if (!last.aux.empty())
        profile[cfg.problem == hsint::Problem::Hs2 ? "rho" : "ux"] = last.aux;
    out["profile"] = profile;

    if (result.failure) {
        py::dict failure;
        failure["step"] = result.failure->step;
        failure["message"] = result.failure->message;
        out["failure"] = failure;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(hsint, m) {
    m.doc() = "Structure-preserving finite-difference solvers for "
              "Hunter-Saxton-like equations";
    m.attr("__version__") = hsint::kArtifactVersion;

    m.def("hs_exact", &hsint::hs_exact, py::arg("x"), py::arg("t"),
          "Exact weak solution of the Hunter-Saxton equation.");

    m.def(
        "generate_wave",
        [](const std::string& system, int n, const py::kwargs& kwargs) {
            return wave_to_dict(hsint::generate_wave(spec_from_args(system, kwargs), n));
        },
        py::arg("system"), py::arg("N"),
        "Generate a periodic travelling wave. mhs keywords: omega, m, M, c; "
        "hs2 keywords: b, z, Z, c. Returns period, samples and (hs2) the "
        "density profile.");

    m.def("run", &run_from_dict, py::arg("config"),
          "Run a simulation from a config mapping (same keys as the CLI "
          "config files). Returns invariant series and the final profile.");

    m.def(
        "parse_config_file",
        [](const std::string& path) {
            const hsint::RunConfig cfg = hsint::parse_config(path);
            return hsint::manifest_text(cfg);
        },
        py::arg("path"), "Validate a config file; returns the manifest echo.");
}
