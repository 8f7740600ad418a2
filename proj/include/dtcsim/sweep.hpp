// sweep.hpp: grid sweeps over two model parameters, area ratios, and
// per-column instability-threshold scans.

#pragma once

#include "dtcsim/classifier.hpp"
#include "dtcsim/simulation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtcsim {

// Parameter names accepted by set_parameter / get_parameter. Aliases
// ("A", "wd", "gprime", ...) resolve to these.
const std::vector<std::string>& sweepable_parameters();
std::string canonical_parameter(std::string_view name);
void set_parameter(ModelSpec& spec, std::string_view name, double value);
double get_parameter(const ModelSpec& spec, std::string_view name);

struct Axis {
    std::string name;
    double min{0.0};
    double max{1.0};
    int count{60};

    void validate() const;
    double value(int i) const;
};

struct SweepConfig {
    ModelSpec model{};
    Axis axis1{"drive_frequency", 0.2, 1.4, 60};
    Axis axis2{"amplitude", 0.0, 1.0, 60};
    IntegratorConfig integrator{};
    ClassifierConfig classifier{};
    int workers{1};
    std::string output;

    void validate() const;
};

struct PhaseCell {
    double x1{0.0};
    double x2{0.0};
    PhaseLabel label;
};

struct PhaseDiagram {
    SweepConfig config;
    std::vector<PhaseCell> cells;  // axis1-major: index i1 * axis2.count + i2
    double wall_time_s{0.0};

    const PhaseCell& at(int i1, int i2) const;
};

// Seeds, integrates both trajectories and classifies one parameter point.
// Errors are recorded in the label note instead of being thrown.
PhaseLabel evaluate_point(const ModelSpec& spec, const IntegratorConfig& integrator,
                          const ClassifierConfig& classifier);

PhaseDiagram run_sweep(const SweepConfig& config);

double area_ratio(const PhaseDiagram& diagram, PhaseKind kind);

// Minimum value of `amp_axis` (searched on [amp_min, amp_max]) at which the
// seed stops relaxing to the normal phase, for each point of `scan_axis`.
struct ThresholdScanConfig {
    ModelSpec model{};
    Axis scan_axis{"drive_frequency", 0.2, 1.4, 60};
    std::string amp_axis{"amplitude"};
    double amp_min{0.0};
    double amp_max{1.0};
    int iterations{12};
    IntegratorConfig integrator{};
    ClassifierConfig classifier{};
    int workers{1};

    void validate() const;
};

struct ThresholdPoint {
    double x{0.0};
    std::optional<double> threshold;  // empty when stable up to amp_max
};

bool seed_is_unstable(const ModelSpec& spec, const IntegratorConfig& integrator,
                      const ClassifierConfig& classifier);
std::vector<ThresholdPoint> threshold_scan(const ThresholdScanConfig& config);

// Lowest threshold of a scan (the lobe tip); empty if nothing was unstable.
std::optional<ThresholdPoint> lobe_tip(const std::vector<ThresholdPoint>& scan);

}  // namespace dtcsim
