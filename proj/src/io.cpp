#include "dtcsim/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace dtcsim {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw ConfigError(key + ": expected a number, got '" + v + "'");
    return out;
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    return out;
}

int parse_count(const std::string& key, const std::string& v) {
    const auto n = parse_int(key, v);
    if (n < 0 || n > 1'000'000) throw ConfigError(key + ": out of range");
    return static_cast<int>(n);
}

struct SettingEntry {
    std::function<void(SweepConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const SweepConfig&)> get;
};

using Table = std::vector<std::pair<std::string, SettingEntry>>;

SettingEntry param_entry(const std::string& name) {
    return {[name](SweepConfig& c, const std::string& key, const std::string& v) {
                set_parameter(c.model, name, parse_double(key, v));
            },
            [name](const SweepConfig& c) { return format_double(get_parameter(c.model, name)); }};
}

template <typename T, typename Parse>
SettingEntry field_entry(T SweepConfig::*block, double T::*field, Parse) {
    return {[block, field](SweepConfig& c, const std::string& key, const std::string& v) {
                c.*block.*field = parse_double(key, v);
            },
            [block, field](const SweepConfig& c) { return format_double(c.*block.*field); }};
}

SettingEntry classifier_entry(double ClassifierConfig::*field) {
    return field_entry(&SweepConfig::classifier, field, 0);
}

SettingEntry axis_name_entry(Axis SweepConfig::*axis) {
    return {[axis](SweepConfig& c, const std::string&, const std::string& v) { (c.*axis).name = v; },
            [axis](const SweepConfig& c) { return (c.*axis).name; }};
}

SettingEntry axis_bound_entry(Axis SweepConfig::*axis, double Axis::*field) {
    return {[axis, field](SweepConfig& c, const std::string& key, const std::string& v) {
                (c.*axis).*field = parse_double(key, v);
            },
            [axis, field](const SweepConfig& c) { return format_double((c.*axis).*field); }};
}

SettingEntry axis_count_entry(Axis SweepConfig::*axis) {
    return {[axis](SweepConfig& c, const std::string& key, const std::string& v) {
                (c.*axis).count = parse_count(key, v);
            },
            [axis](const SweepConfig& c) { return std::to_string((c.*axis).count); }};
}

const Table& table() {
    static const Table t = [] {
        Table t;
        t.emplace_back("model", SettingEntry{
            [](SweepConfig& c, const std::string&, const std::string& v) {
                c.model.kind = model_kind_from_string(v);
            },
            [](const SweepConfig& c) { return std::string(to_string(c.model.kind)); }});
        for (const char* p : {"omega", "omega0", "kappa", "gprime", "A", "wd", "epsilon",
                              "lambda0", "gamma", "Gamma", "y0"}) {
            t.emplace_back(p, param_entry(p));
        }
        t.emplace_back("hemisphere", SettingEntry{
            [](SweepConfig& c, const std::string& key, const std::string& v) {
                if (v == "south") c.model.lmg_hemisphere = Hemisphere::South;
                else if (v == "north") c.model.lmg_hemisphere = Hemisphere::North;
                else throw ConfigError(key + ": expected 'south' or 'north'");
            },
            [](const SweepConfig& c) {
                return std::string(c.model.lmg_hemisphere == Hemisphere::South ? "south" : "north");
            }});
        t.emplace_back("axis1", axis_name_entry(&SweepConfig::axis1));
        t.emplace_back("axis1_min", axis_bound_entry(&SweepConfig::axis1, &Axis::min));
        t.emplace_back("axis1_max", axis_bound_entry(&SweepConfig::axis1, &Axis::max));
        t.emplace_back("axis1_count", axis_count_entry(&SweepConfig::axis1));
        t.emplace_back("axis2", axis_name_entry(&SweepConfig::axis2));
        t.emplace_back("axis2_min", axis_bound_entry(&SweepConfig::axis2, &Axis::min));
        t.emplace_back("axis2_max", axis_bound_entry(&SweepConfig::axis2, &Axis::max));
        t.emplace_back("axis2_count", axis_count_entry(&SweepConfig::axis2));
        t.emplace_back("dt", field_entry(&SweepConfig::integrator, &IntegratorConfig::dt, 0));
        t.emplace_back("t_final", field_entry(&SweepConfig::integrator, &IntegratorConfig::t_final, 0));
        t.emplace_back("stride", SettingEntry{
            [](SweepConfig& c, const std::string& key, const std::string& v) {
                c.integrator.stride = parse_int(key, v);
            },
            [](const SweepConfig& c) { return std::to_string(c.integrator.stride); }});
        t.emplace_back("divergence_cutoff",
                       field_entry(&SweepConfig::integrator, &IntegratorConfig::divergence_cutoff, 0));
        t.emplace_back("np_threshold", classifier_entry(&ClassifierConfig::np_threshold));
        t.emplace_back("np_growth_factor", classifier_entry(&ClassifierConfig::np_growth_factor));
        t.emplace_back("head_fraction", classifier_entry(&ClassifierConfig::head_fraction));
        t.emplace_back("ub_threshold", classifier_entry(&ClassifierConfig::ub_threshold));
        t.emplace_back("d2_threshold", classifier_entry(&ClassifierConfig::d2_threshold));
        t.emplace_back("sigma_amp_threshold", classifier_entry(&ClassifierConfig::sigma_amp_threshold));
        t.emplace_back("fft_window_periods", classifier_entry(&ClassifierConfig::fft_window_periods));
        t.emplace_back("delta", classifier_entry(&ClassifierConfig::perturbation_delta));
        t.emplace_back("envelope_window", classifier_entry(&ClassifierConfig::envelope_window));
        t.emplace_back("subharmonic_tolerance", classifier_entry(&ClassifierConfig::subharmonic_tolerance));
        t.emplace_back("nb_z_tolerance", classifier_entry(&ClassifierConfig::nb_z_tolerance));
        t.emplace_back("peak_floor", classifier_entry(&ClassifierConfig::peak_floor));
        t.emplace_back("workers", SettingEntry{
            [](SweepConfig& c, const std::string& key, const std::string& v) {
                c.workers = parse_count(key, v);
            },
            [](const SweepConfig& c) { return std::to_string(c.workers); }});
        t.emplace_back("output", SettingEntry{
            [](SweepConfig& c, const std::string&, const std::string& v) { c.output = v; },
            [](const SweepConfig& c) { return c.output; }});
        return t;
    }();
    return t;
}

const SettingEntry* find_entry(const std::string& key) {
    for (const auto& [k, e] : table()) {
        if (k == key) return &e;
    }
    return nullptr;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

Settings parse_settings(std::istream& in) {
    Settings out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        auto key = trim(std::string_view(body).substr(0, eq));
        auto value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

Settings load_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_settings(in);
}

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, e] : table()) k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_setting(SweepConfig& config, const std::string& key, const std::string& value) {
    const auto* entry = find_entry(key);
    if (!entry) throw ConfigError("unknown config key '" + key + "'");
    entry->set(config, key, value);
}

void apply_settings(SweepConfig& config, const Settings& settings) {
    // The model is applied first so that parameter keys land regardless of order.
    for (const auto& [k, v] : settings) {
        if (k == "model") apply_setting(config, k, v);
    }
    for (const auto& [k, v] : settings) {
        if (k != "model") apply_setting(config, k, v);
    }
}

Settings config_settings(const SweepConfig& config) {
    Settings out;
    for (const auto& [k, e] : table()) out.emplace_back(k, e.get(config));
    return out;
}

// Trajectory CSV ----------------------------------------------------------

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const SweepConfig& settings,
                          double perturbation) {
    const auto kind = model_kind_from_string(traj.model_id.empty()
                                                 ? std::string(to_string(settings.model.kind))
                                                 : traj.model_id);
    out << "# " << kVersion << " trajectory\n";
    for (const auto& [k, v] : config_settings(settings)) {
        if (k.rfind("axis", 0) == 0 || k == "workers" || k == "output") continue;
        out << "# " << k << " = " << v << '\n';
    }
    out << "# perturbation = " << format_double(perturbation) << '\n';
    out << "# diverged = " << (traj.diverged ? "true" : "false") << '\n';
    out << 't';
    for (const auto& c : traj.components) out << ',' << c;
    out << ",Jx_over_N\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto row = traj.row(k);
        out << format_double(traj.time(k));
        for (double v : row) out << ',' << format_double(v);
        out << ',' << format_double(primary_observable(kind, row)) << '\n';
    }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const SweepConfig& settings, double perturbation) {
    auto out = open_out(path);
    write_trajectory_csv(out, traj, settings, perturbation);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

TrajectoryRecord read_trajectory_csv(std::istream& in) {
    TrajectoryRecord rec;
    Settings meta;
    std::string line;
    bool diverged = false;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto key = trim(std::string_view(line).substr(1, eq - 1));
            auto value = trim(std::string_view(line).substr(eq + 1));
            if (key == "perturbation") rec.perturbation = parse_double(key, value);
            else if (key == "diverged") diverged = value == "true";
            else meta.emplace_back(std::move(key), std::move(value));
            continue;
        }
        header = split_csv(line);
        break;
    }
    apply_settings(rec.settings, meta);
    const auto kind = rec.settings.model.kind;
    const auto names = component_names(kind);
    if (header.size() != names.size() + 2 || header.front() != "t" || header.back() != "Jx_over_N" ||
        !std::equal(names.begin(), names.end(), header.begin() + 1)) {
        throw std::runtime_error("trajectory file: header does not match model '" +
                                 std::string(to_string(kind)) + "'");
    }

    auto& traj = rec.trajectory;
    traj.dt = rec.settings.integrator.dt;
    traj.stride = rec.settings.integrator.stride;
    traj.dim = names.size();
    traj.model_id = std::string(to_string(kind));
    traj.components = names;
    traj.diverged = diverged;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("trajectory file: row " + std::to_string(lineno) +
                                     " has the wrong number of columns");
        }
        for (std::size_t c = 1; c + 1 < cells.size(); ++c) {
            traj.samples.push_back(parse_double(header[c], cells[c]));
        }
    }
    traj.truncation_index = traj.size();
    return rec;
}

TrajectoryRecord read_trajectory_csv(const std::string& path) {
    auto in = open_in(path);
    return read_trajectory_csv(in);
}

// Phase diagram --------------------------------------------------------------

void write_phase_diagram_csv(std::ostream& out, const PhaseDiagram& diagram) {
    out << "axis1,axis2,label,n,max_amp,d2,sigma_amp,dominant_freq\n";
    for (const auto& c : diagram.cells) {
        const auto& d = c.label.diagnostics;
        out << format_double(c.x1) << ',' << format_double(c.x2) << ',' << to_string(c.label.kind)
            << ',' << d.response_order_n << ',' << format_double(d.max_amp) << ','
            << format_double(d.d2) << ',' << format_double(d.sigma_amp) << ','
            << format_double(d.dominant_freq) << '\n';
    }
}

void write_phase_diagram(const std::string& path, const PhaseDiagram& diagram) {
    {
        auto out = open_out(path);
        write_phase_diagram_csv(out, diagram);
        if (!out) throw std::runtime_error("write failed for '" + path + "'");
    }
    nlohmann::ordered_json side;
    side["version"] = kVersion;
    side["axis1"] = diagram.config.axis1.name;
    side["axis2"] = diagram.config.axis2.name;
    auto& cfg = side["config"];
    cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config_settings(diagram.config)) cfg[k] = v;
    auto notes = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < diagram.cells.size(); ++i) {
        if (!diagram.cells[i].label.note.empty()) {
            notes.push_back({{"cell", i}, {"note", diagram.cells[i].label.note}});
        }
    }
    side["notes"] = notes;
    side["wall_time_s"] = diagram.wall_time_s;
    auto out = open_out(path + ".json");
    out << side.dump(2) << '\n';
}

PhaseDiagram read_phase_diagram(const std::string& path) {
    PhaseDiagram diagram;
    std::optional<nlohmann::json> side;
    if (std::ifstream side_in(path + ".json"); side_in) {
        side = nlohmann::json::parse(side_in);
        Settings s;
        for (const auto& [k, v] : side->at("config").items()) s.emplace_back(k, v.get<std::string>());
        apply_settings(diagram.config, s);
        diagram.wall_time_s = side->value("wall_time_s", 0.0);
    }
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) ||
        trim(line) != "axis1,axis2,label,n,max_amp,d2,sigma_amp,dominant_freq") {
        throw std::runtime_error("phase diagram: unexpected header in '" + path + "'");
    }
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto c = split_csv(line);
        if (c.size() != 8) throw std::runtime_error("phase diagram: malformed row '" + line + "'");
        PhaseCell cell;
        cell.x1 = parse_double("axis1", c[0]);
        cell.x2 = parse_double("axis2", c[1]);
        cell.label.kind = phase_kind_from_string(c[2]);
        auto& d = cell.label.diagnostics;
        d.response_order_n = static_cast<int>(parse_int("n", c[3]));
        d.max_amp = parse_double("max_amp", c[4]);
        d.d2 = parse_double("d2", c[5]);
        d.sigma_amp = parse_double("sigma_amp", c[6]);
        d.dominant_freq = parse_double("dominant_freq", c[7]);
        diagram.cells.push_back(std::move(cell));
    }
    if (side && side->contains("notes")) {
        for (const auto& n : (*side)["notes"]) {
            const auto i = n.at("cell").get<std::size_t>();
            if (i < diagram.cells.size()) diagram.cells[i].label.note = n.at("note").get<std::string>();
        }
    }
    return diagram;
}

}  // namespace dtcsim
