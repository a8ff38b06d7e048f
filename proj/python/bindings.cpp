#include "qrc/sweep.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace qrc;

namespace {

TimeSeries to_series(const std::vector<double>& values) { return {values, SeriesOrigin::custom}; }

ReservoirSpec make_spec(int n_spins, double h, std::uint64_t seed, double dt) {
    return ReservoirSpec::random(n_spins, h, seed, dt);
}

TrajectoryOptions options(int washout) {
    TrajectoryOptions o;
    o.washout = washout;
    return o;
}

py::dict sweep_summary(const SweepResult& r) {
    py::dict d;
    d["rsp_best_h"] = r.rsp_best_h;
    d["rsp_best_sum"] = r.rsp_best_sum;
    d["rsp_mean"] = r.rsp_mean;
    d["best_g"] = r.best_g;
    d["best_h"] = r.best_h;
    d["best_pr"] = r.best_pr;
    py::list cells;
    for (const auto& a : r.aggregates) {
        py::dict c;
        c["g"] = a.g;
        c["h"] = a.h;
        c["mean_pr"] = a.mean_pr;
        c["std_pr"] = a.std_pr;
        cells.append(c);
    }
    d["aggregates"] = cells;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum reservoir computing with tunable indirect measurements";

    py::class_<FeatureTable>(m, "FeatureTable")
        .def_readwrite("rows", &FeatureTable::rows)
        .def_readwrite("washout", &FeatureTable::washout)
        .def_property_readonly("columns",
                               [](const FeatureTable& t) {
                                   std::vector<std::string> names;
                                   for (const auto& c : t.columns) names.push_back(c.name());
                                   return names;
                               })
        .def_property_readonly("shape", [](const FeatureTable& t) { return py::make_tuple(t.n_rows(), t.n_cols()); })
        .def("select", [](const FeatureTable& t, const std::string& axis) { return t.select(parse_axis(axis)); },
             py::arg("axis"));

    m.def("gen_memory_series", [](std::uint64_t seed, std::size_t length) { return gen_memory_series(seed, length).values; },
          py::arg("seed"), py::arg("length") = kMemoryLength);
    m.def("load_santafe", [](const std::filesystem::path& path, std::size_t length) { return load_santafe(path, length).values; },
          py::arg("path"), py::arg("length") = kSantaFeLength);

    m.def("sample_couplings", &sample_couplings, py::arg("n_spins"), py::arg("seed"));
    m.def("backaction_mask", [](double g, int n_spins) { return backaction_mask(g, n_spins).mask; }, py::arg("g"),
          py::arg("n_spins"));

    m.def(
        "run_rsp",
        [](const std::vector<double>& series, int n_spins, double h, std::uint64_t seed, double dt, int washout) {
            return run_rsp(to_series(series), make_spec(n_spins, h, seed, dt), options(washout));
        },
        py::arg("series"), py::arg("n_spins") = 6, py::arg("h") = 0.3, py::arg("seed") = 1, py::arg("dt") = 10.0,
        py::arg("washout") = 20, py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_olp",
        [](const std::vector<double>& series, double g, int n_spins, double h, std::uint64_t seed, double dt, int washout) {
            return run_olp(to_series(series), make_spec(n_spins, h, seed, dt), g, options(washout));
        },
        py::arg("series"), py::arg("g"), py::arg("n_spins") = 6, py::arg("h") = 0.066, py::arg("seed") = 1,
        py::arg("dt") = 10.0, py::arg("washout") = 20, py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_feedback",
        [](const std::vector<double>& series, double a_fb, int n_spins, double h, std::uint64_t seed, double dt, int washout) {
            return run_feedback(to_series(series), make_spec(n_spins, h, seed, dt), FeedbackSpec::brick_wall(n_spins, a_fb),
                                options(washout));
        },
        py::arg("series"), py::arg("a_fb"), py::arg("n_spins") = 6, py::arg("h") = 10.0, py::arg("seed") = 1,
        py::arg("dt") = 10.0, py::arg("washout") = 20, py::call_guard<py::gil_scoped_release>());

    m.def(
        "apply_shot_noise",
        [](const FeatureTable& t, double g, double n_shots, std::uint64_t seed) { return apply_shot_noise(t, g, n_shots, seed); },
        py::arg("table"), py::arg("g"), py::arg("n_shots"), py::arg("seed"),
        "g = inf selects the projective (RSP) noise level.");
    m.def("sigma_single", &sigma_single, py::arg("g"), py::arg("n_shots"));
    m.def("sigma_pair", &sigma_pair, py::arg("g"), py::arg("n_shots"));
    m.def("shots_rsp_equivalent", &shots_rsp_equivalent, py::arg("n_shots_olp"), py::arg("K"), py::arg("K_wo") = 20);

    m.def(
        "evaluate_task",
        [](const FeatureTable& t, const std::vector<double>& series, const std::string& task, int eta_max) {
            const TaskKind kind = parse_task(task);
            return evaluate_task(t, to_series(series), kind, eta_max > 0 ? eta_max : default_eta_max(kind)).capacities;
        },
        py::arg("table"), py::arg("series"), py::arg("task") = "memory", py::arg("eta_max") = 0,
        "Per-eta capacities, eta = 1..eta_max.");
    m.def("capacity", &capacity, py::arg("predictions"), py::arg("targets"));

    m.def(
        "run_sweep",
        [](const std::filesystem::path& config, const std::string& out_dir) {
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = run_sweep(load_config(config));
                if (!out_dir.empty()) emit_results(r, out_dir);
            }
            return sweep_summary(r);
        },
        py::arg("config"), py::arg("out_dir") = "");
}
