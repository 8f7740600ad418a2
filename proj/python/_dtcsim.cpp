#include "dtcsim/io.hpp"
#include "dtcsim/spectral.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dtcsim;

namespace {

// Keyword arguments use the configuration-file keys (kappa, A, wd, t_final, ...).
SweepConfig config_from(const py::kwargs& kwargs) {
    SweepConfig c;
    Settings s;
    for (const auto& [k, v] : kwargs) s.emplace_back(py::str(k), py::str(v));
    apply_settings(c, s);
    return c;
}

py::dict label_dict(const PhaseLabel& l) {
    py::dict d;
    d["label"] = l.text();
    d["kind"] = std::string(to_string(l.kind));
    d["n"] = l.diagnostics.response_order_n;
    d["max_amp"] = l.diagnostics.max_amp;
    d["d2"] = l.diagnostics.d2;
    d["sigma_amp"] = l.diagnostics.sigma_amp;
    d["dominant_freq"] = l.diagnostics.dominant_freq;
    d["note"] = l.note;
    return d;
}

py::dict trajectory_dict(const Trajectory& t) {
    py::array_t<double> samples({t.size(), t.dim});
    std::copy(t.samples.begin(), t.samples.end(), samples.mutable_data());
    py::array_t<double> times(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) times.mutable_at(k) = t.time(k);
    py::dict d;
    d["t"] = times;
    d["samples"] = samples;
    d["components"] = t.components;
    d["diverged"] = t.diverged;
    return d;
}

py::dict simulate_py(double perturbation, const py::kwargs& kwargs) {
    const auto c = config_from(kwargs);
    c.validate();
    const auto traj = simulate(c.model, c.integrator, perturbation);
    auto d = trajectory_dict(traj);
    d["observable"] = py::array(py::cast(primary_series(traj, c.model.kind)));
    return d;
}

py::dict sweep_py(const py::kwargs& kwargs) {
    const auto c = config_from(kwargs);
    PhaseDiagram diagram;
    {
        py::gil_scoped_release release;
        diagram = run_sweep(c);
    }
    std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(c.axis1.count));
    py::list notes;
    for (int i = 0; i < c.axis1.count; ++i) {
        for (int j = 0; j < c.axis2.count; ++j) {
            const auto& cell = diagram.at(i, j);
            labels[static_cast<std::size_t>(i)].push_back(cell.label.text());
            if (!cell.label.note.empty()) notes.append(py::make_tuple(i, j, cell.label.note));
        }
    }
    std::vector<double> a1, a2;
    for (int i = 0; i < c.axis1.count; ++i) a1.push_back(c.axis1.value(i));
    for (int j = 0; j < c.axis2.count; ++j) a2.push_back(c.axis2.value(j));
    py::dict area;
    for (auto k : {PhaseKind::NP, PhaseKind::SB, PhaseKind::UB, PhaseKind::DTC_2T,
                   PhaseKind::DTC_HO, PhaseKind::NB, PhaseKind::SBB, PhaseKind::Chaotic,
                   PhaseKind::OtherNonDTC})
        area[py::str(std::string(to_string(k)))] = area_ratio(diagram, k);
    if (!c.output.empty()) write_phase_diagram(c.output, diagram);
    py::dict d;
    d["axis1"] = py::make_tuple(c.axis1.name, a1);
    d["axis2"] = py::make_tuple(c.axis2.name, a2);
    d["labels"] = labels;
    d["area"] = area;
    d["notes"] = notes;
    d["wall_time_s"] = diagram.wall_time_s;
    return d;
}

py::dict resonance_py(double omega, double kappa, double g_ratio) {
    const auto p = resonance_prediction(omega, kappa, g_ratio);
    py::dict d;
    d["omega_r"] = p.omega_r;
    d["A_r"] = p.a_r;
    d["omega_r_large_kappa"] = p.omega_r_large_kappa;
    d["kappa_max"] = p.kappa_max;
    d["delta"] = p.delta;
    d["kappa_c_prime"] = p.critical.kappa_c_prime ? py::cast(*p.critical.kappa_c_prime) : py::none();
    d["kappa_c_dprime"] = p.critical.kappa_c_dprime;
    d["prediction_unreliable"] = p.prediction_unreliable;
    return d;
}

LmgParams lmg_params(double omega0, double lambda0, double gamma, double Gamma) {
    LmgParams p;
    p.omega0 = omega0;
    p.lambda0 = lambda0;
    p.gamma = gamma;
    p.Gamma = Gamma;
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_dtcsim, m) {
    m.doc() = "Mean-field simulations and phase classification of driven Dicke and LMG models";
    m.attr("version") = kVersion;
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("setting_keys", &setting_keys);
    m.def("simulate", &simulate_py, py::arg("perturbation") = 0.0,
          "Integrates one trajectory. Keyword arguments are configuration keys.");
    m.def("classify", [](const py::kwargs& kwargs) {
        const auto c = config_from(kwargs);
        c.validate();
        PhaseLabel l;
        {
            py::gil_scoped_release release;
            l = evaluate_point(c.model, c.integrator, c.classifier);
        }
        return label_dict(l);
    });
    m.def("sweep", &sweep_py, "Runs a two-axis phase-diagram sweep.");
    m.def("threshold_scan", [](const py::kwargs& kwargs) {
        const auto c = config_from(kwargs);
        ThresholdScanConfig t;
        t.model = c.model;
        t.scan_axis = c.axis1;
        t.amp_axis = c.axis2.name;
        t.amp_min = c.axis2.min;
        t.amp_max = c.axis2.max;
        t.integrator = c.integrator;
        t.classifier = c.classifier;
        t.workers = c.workers;
        std::vector<ThresholdPoint> scan;
        {
            py::gil_scoped_release release;
            scan = threshold_scan(t);
        }
        py::list out;
        for (const auto& p : scan)
            out.append(py::make_tuple(p.x, p.threshold ? py::cast(*p.threshold) : py::none()));
        return out;
    }, "Instability threshold along axis1, bisecting on axis2.");

    m.def("critical_coupling", py::overload_cast<double, double, double>(&critical_coupling),
          py::arg("omega"), py::arg("omega0"), py::arg("kappa"));
    m.def("polariton_frequencies", &polariton_frequencies, py::arg("omega"), py::arg("kappa"),
          py::arg("g_ratio"));
    m.def("resonant_amplitude", &resonant_amplitude, py::arg("omega"), py::arg("kappa"),
          py::arg("g_ratio"));
    m.def("resonance_prediction", &resonance_py, py::arg("omega"), py::arg("kappa"),
          py::arg("g_ratio"));
    m.def("lambda_critical", [](double omega0, double gamma, double Gamma) {
        py::list out;
        for (const auto& r : lambda_critical(lmg_params(omega0, 1.0, gamma, Gamma)).roots)
            out.append(py::make_tuple(r.value, r.real));
        return out;
    }, py::arg("omega0"), py::arg("gamma"), py::arg("Gamma"));
    m.def("lmg_steady_state", [](double omega0, double lambda0, double gamma, double Gamma) {
        const auto s = lmg_steady_state(lmg_params(omega0, lambda0, gamma, Gamma));
        py::list sb;
        for (const auto& b : s.symmetry_broken) sb.append(py::make_tuple(b.Xs, b.Ys, b.Zs));
        py::dict d;
        d["normal"] = py::make_tuple(s.normal.X, s.normal.Y, s.normal.Z);
        d["symmetry_broken"] = sb;
        d["overdamped"] = s.overdamped;
        return d;
    }, py::arg("omega0"), py::arg("lambda0"), py::arg("gamma"), py::arg("Gamma"));
}
