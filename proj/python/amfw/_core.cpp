#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amfw/errors.hpp"
#include "amfw/experiment.hpp"
#include "amfw/integrator.hpp"
#include "amfw/stability.hpp"

namespace py = pybind11;

namespace {

py::list rows_to_list(const amfw::ErrorReport& rep) {
    py::list out;
    for (const amfw::ReportRow& r : rep.rows) {
        py::dict d;
        d["h"] = r.h;
        d["dt"] = r.dt;
        d["skipped"] = r.skipped;
        if (r.has_values) {
            d["ge_l2"] = r.ge_l2;
            d["ge_max"] = r.ge_max;
        }
        if (r.has_orders) {
            d["p_l2"] = r.p_l2;
            d["p_max"] = r.p_max;
        }
        if (!r.note.empty()) d["note"] = r.note;
        out.append(d);
    }
    return out;
}

py::dict solve(const std::string& problem, double C, int n, const std::string& method,
               const std::string& correction, double dt, double t_end) {
    const amfw::PDEProblem p = amfw::make_problem(problem, C);
    const amfw::AMFWTableau tb = amfw::find_tableau(method);
    const amfw::BoundaryCorrection corr = amfw::parse_correction(correction);
    const std::vector<int> ns(static_cast<std::size_t>(p.dim), n);
    const amfw::Grid g =
        amfw::build_grid(ns, corr == amfw::BoundaryCorrection::Extension);
    if (t_end <= 0.0) t_end = p.t_end;
    const amfw::GridField v = amfw::integrate(p, g, tb, corr, dt, t_end);
    const auto [ge2, gei] = amfw::global_error(p, v, t_end);
    py::dict out;
    out["h"] = g.dx(0);
    out["dt"] = dt;
    out["ge_l2"] = ge2;
    out["ge_max"] = gei;
    out["values"] = v.v;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "AMF-W splitting solver for semilinear parabolic PDEs on the unit hypercube";

    m.def("solve", &solve, py::arg("problem"), py::arg("C") = 0.0, py::arg("n") = 15,
          py::arg("method") = "amfw-hv", py::arg("correction") = "none", py::arg("dt") = 1.0 / 16,
          py::arg("t_end") = -1.0,
          "Integrate a catalog problem on an n^d grid and return values and global errors.");

    m.def("methods", [] { return amfw::tableau_names(); }, "Registered AMF-W method names.");

    m.def(
        "eval_r",
        [](const std::string& method, const std::vector<std::complex<double>>& z) {
            return amfw::eval_R(amfw::find_tableau(method), z);
        },
        py::arg("method"), py::arg("z"),
        "Stability function R(z_1, ..., z_d) of one AMF-W step.");

    m.def(
        "stability_report",
        [](const std::string& method, int d, int samples, double c_trial, std::uint64_t seed) {
            const amfw::StabilityReport r = amfw::check_theorem1_condition(
                amfw::find_tableau(method), d, samples, c_trial, seed);
            py::dict out;
            out["samples"] = r.samples;
            out["min_r_plus_1"] = r.min_r_plus_1;
            out["max_upper_violation"] = r.max_upper_violation;
            out["satisfied_fraction"] = r.satisfied_fraction;
            out["c_limit"] = r.c_limit;
            return out;
        },
        py::arg("method"), py::arg("d") = 3, py::arg("samples") = 10000,
        py::arg("c_trial") = 1.0, py::arg("seed") = 1,
        "Monte-Carlo check of the stability bound on the negative real orthant.");

    m.def(
        "list_presets",
        [] {
            py::list out;
            for (const amfw::Preset& p : amfw::preset_registry()) {
                py::dict d;
                d["name"] = p.name;
                d["description"] = p.description;
                d["config"] = amfw::serialize_config(p.config);
                out.append(d);
            }
            return out;
        },
        "Named experiment presets reproducing the reference tables.");

    m.def(
        "run_preset",
        [](const std::string& name) { return rows_to_list(amfw::run_experiment(amfw::find_preset(name).config)); },
        py::arg("name"), "Run a preset and return its report rows.");

    m.def(
        "run_config",
        [](const std::string& json_text) {
            return rows_to_list(amfw::run_experiment(amfw::parse_config(json_text)));
        },
        py::arg("json"), "Run an experiment from a JSON config string.");
}
