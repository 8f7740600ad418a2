#include "dtcsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

namespace dtcsim {

namespace {

// Runs fn(i) for i in [0, count) on up to `workers` threads. Results must be
// written by index; completion order is irrelevant.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    const auto nthreads = static_cast<std::size_t>(std::max(1, workers));
    if (nthreads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(nthreads, count); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

const std::vector<std::string>& sweepable_parameters() {
    static const std::vector<std::string> names{
        "omega", "omega0", "kappa", "g_ratio", "amplitude", "drive_frequency",
        "epsilon", "lambda0", "gamma", "Gamma", "y0"};
    return names;
}

std::string canonical_parameter(std::string_view name) {
    if (name == "A") return "amplitude";
    if (name == "wd" || name == "omega_d") return "drive_frequency";
    if (name == "gprime" || name == "g'") return "g_ratio";
    if (name == "lambda") return "lambda0";
    if (name == "eps") return "epsilon";
    for (const auto& n : sweepable_parameters()) {
        if (n == name) return n;
    }
    throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

void set_parameter(ModelSpec& spec, std::string_view name, double value) {
    const auto key = canonical_parameter(name);
    if (key == "omega") spec.dicke.omega = value;
    else if (key == "omega0") spec.dicke.omega0 = spec.lmg.omega0 = value;
    else if (key == "kappa") spec.dicke.kappa = value;
    else if (key == "g_ratio") spec.dicke.g_ratio = value;
    else if (key == "amplitude") spec.dicke.amplitude = spec.lmg.amplitude = value;
    else if (key == "drive_frequency") spec.dicke.drive_frequency = spec.lmg.drive_frequency = value;
    else if (key == "epsilon") spec.epsilon = value;
    else if (key == "lambda0") spec.lmg.lambda0 = value;
    else if (key == "gamma") spec.lmg.gamma = value;
    else if (key == "Gamma") spec.lmg.Gamma = value;
    else if (key == "y0") spec.lmg_y0 = value;
}

double get_parameter(const ModelSpec& spec, std::string_view name) {
    const auto key = canonical_parameter(name);
    const bool dicke = is_dicke_family(spec.kind);
    if (key == "omega") return spec.dicke.omega;
    if (key == "omega0") return dicke ? spec.dicke.omega0 : spec.lmg.omega0;
    if (key == "kappa") return spec.dicke.kappa;
    if (key == "g_ratio") return spec.dicke.g_ratio;
    if (key == "amplitude") return dicke ? spec.dicke.amplitude : spec.lmg.amplitude;
    if (key == "drive_frequency") return dicke ? spec.dicke.drive_frequency : spec.lmg.drive_frequency;
    if (key == "epsilon") return spec.epsilon;
    if (key == "lambda0") return spec.lmg.lambda0;
    if (key == "gamma") return spec.lmg.gamma;
    if (key == "Gamma") return spec.lmg.Gamma;
    return spec.lmg_y0;
}

void Axis::validate() const {
    canonical_parameter(name);
    if (count < 2) throw ConfigError("axis '" + name + "': count must be >= 2");
    if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) {
        throw ConfigError("axis '" + name + "': need finite min < max");
    }
}

double Axis::value(int i) const {
    if (i == count - 1) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

void SweepConfig::validate() const {
    axis1.validate();
    axis2.validate();
    if (canonical_parameter(axis1.name) == canonical_parameter(axis2.name)) {
        throw ConfigError("sweep axes must name distinct parameters");
    }
    // Fixed parameters are checked at an in-range corner; cells outside the
    // model's validity are recorded per cell.
    ModelSpec probe = model;
    set_parameter(probe, axis1.name, axis1.min);
    set_parameter(probe, axis2.name, axis2.min);
    probe.validate();
    integrator.validate();
    classifier.validate();
    if (workers < 1) throw ConfigError("workers must be >= 1");
}

const PhaseCell& PhaseDiagram::at(int i1, int i2) const {
    if (i1 < 0 || i2 < 0 || i1 >= config.axis1.count || i2 >= config.axis2.count) {
        throw std::out_of_range("PhaseDiagram::at: index outside grid");
    }
    return cells.at(static_cast<std::size_t>(i1) * static_cast<std::size_t>(config.axis2.count) +
                    static_cast<std::size_t>(i2));
}

PhaseLabel evaluate_point(const ModelSpec& spec, const IntegratorConfig& integrator,
                          const ClassifierConfig& classifier) {
    try {
        const auto original = simulate(spec, integrator);
        const auto perturbed = simulate(spec, integrator, classifier.perturbation_delta);
        return classify(original, perturbed, spec.kind, spec.drive(), classifier);
    } catch (const std::exception& e) {
        PhaseLabel label;
        label.kind = PhaseKind::OtherNonDTC;
        label.note = std::string("error: ") + e.what();
        return label;
    }
}

PhaseDiagram run_sweep(const SweepConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    PhaseDiagram diagram;
    diagram.config = config;
    const auto n1 = static_cast<std::size_t>(config.axis1.count);
    const auto n2 = static_cast<std::size_t>(config.axis2.count);
    diagram.cells.resize(n1 * n2);

    parallel_for(n1 * n2, config.workers, [&](std::size_t idx) {
        PhaseCell& cell = diagram.cells[idx];
        cell.x1 = config.axis1.value(static_cast<int>(idx / n2));
        cell.x2 = config.axis2.value(static_cast<int>(idx % n2));
        ModelSpec spec = config.model;
        set_parameter(spec, config.axis1.name, cell.x1);
        set_parameter(spec, config.axis2.name, cell.x2);
        cell.label = evaluate_point(spec, config.integrator, config.classifier);
    });

    diagram.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return diagram;
}

double area_ratio(const PhaseDiagram& diagram, PhaseKind kind) {
    if (diagram.cells.empty()) throw std::invalid_argument("area_ratio: empty diagram");
    const auto hits = std::count_if(diagram.cells.begin(), diagram.cells.end(),
                                    [kind](const PhaseCell& c) { return c.label.kind == kind; });
    return static_cast<double>(hits) / static_cast<double>(diagram.cells.size());
}

void ThresholdScanConfig::validate() const {
    scan_axis.validate();
    if (canonical_parameter(scan_axis.name) == canonical_parameter(amp_axis)) {
        throw ConfigError("threshold scan: axes must differ");
    }
    if (!(amp_max > amp_min)) throw ConfigError("threshold scan: need amp_min < amp_max");
    if (iterations < 1) throw ConfigError("threshold scan: iterations must be >= 1");
    integrator.validate();
    classifier.validate();
    if (workers < 1) throw ConfigError("workers must be >= 1");
}

bool seed_is_unstable(const ModelSpec& spec, const IntegratorConfig& integrator,
                      const ClassifierConfig& classifier) {
    return !is_normal_phase(simulate(spec, integrator), spec.kind, classifier);
}

std::vector<ThresholdPoint> threshold_scan(const ThresholdScanConfig& config) {
    config.validate();
    std::vector<ThresholdPoint> out(static_cast<std::size_t>(config.scan_axis.count));
    parallel_for(out.size(), config.workers, [&](std::size_t i) {
        ModelSpec spec = config.model;
        const double x = config.scan_axis.value(static_cast<int>(i));
        set_parameter(spec, config.scan_axis.name, x);
        auto unstable = [&](double a) {
            set_parameter(spec, config.amp_axis, a);
            return seed_is_unstable(spec, config.integrator, config.classifier);
        };
        out[i].x = x;
        if (!unstable(config.amp_max)) return;
        double lo = config.amp_min, hi = config.amp_max;
        if (unstable(lo)) {
            out[i].threshold = lo;
            return;
        }
        for (int it = 0; it < config.iterations; ++it) {
            const double mid = 0.5 * (lo + hi);
            (unstable(mid) ? hi : lo) = mid;
        }
        out[i].threshold = hi;
    });
    return out;
}

std::optional<ThresholdPoint> lobe_tip(const std::vector<ThresholdPoint>& scan) {
    std::optional<ThresholdPoint> best;
    for (const auto& p : scan) {
        if (p.threshold && (!best || *p.threshold < *best->threshold)) best = p;
    }
    return best;
}

}  // namespace dtcsim
