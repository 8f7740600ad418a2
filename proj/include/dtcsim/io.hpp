// io.hpp: key = value configuration, trajectory CSV and phase-diagram
// CSV + JSON sidecar.

#pragma once

#include "dtcsim/sweep.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dtcsim {

inline constexpr const char* kVersion = "dtcsim 0.1.0";

using Settings = std::vector<std::pair<std::string, std::string>>;

// "key = value" lines; '#' starts a comment. Later duplicates win when applied.
Settings parse_settings(std::istream& in);
Settings load_settings_file(const std::string& path);

// Every key understood by apply_setting, in canonical order.
const std::vector<std::string>& setting_keys();
void apply_setting(SweepConfig& config, const std::string& key, const std::string& value);
void apply_settings(SweepConfig& config, const Settings& settings);
// Canonical echo of every key; apply_settings(echo) reproduces the config.
Settings config_settings(const SweepConfig& config);

std::string format_double(double v);

struct TrajectoryRecord {
    Trajectory trajectory;
    SweepConfig settings;  // model and integrator blocks are meaningful
    double perturbation{0.0};
};

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const SweepConfig& settings,
                          double perturbation = 0.0);
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const SweepConfig& settings, double perturbation = 0.0);
TrajectoryRecord read_trajectory_csv(std::istream& in);
TrajectoryRecord read_trajectory_csv(const std::string& path);

// CSV at `path`, JSON sidecar at `path + ".json"`.
void write_phase_diagram(const std::string& path, const PhaseDiagram& diagram);
void write_phase_diagram_csv(std::ostream& out, const PhaseDiagram& diagram);
PhaseDiagram read_phase_diagram(const std::string& path);

}  // namespace dtcsim
