#include "dtcsim/simulation.hpp"

#include <cmath>

namespace dtcsim {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::DickeMf: return "dicke_mf";
        case ModelKind::Lom: return "lom";
        case ModelKind::Nom: return "nom";
        case ModelKind::Lmg: return "lmg";
    }
    return "unknown";
}

ModelKind model_kind_from_string(std::string_view name) {
    if (name == "dicke_mf" || name == "dicke") return ModelKind::DickeMf;
    if (name == "lom") return ModelKind::Lom;
    if (name == "nom") return ModelKind::Nom;
    if (name == "lmg") return ModelKind::Lmg;
    throw ConfigError("unknown model '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
    if (is_dicke_family(kind)) {
        dicke.validate();
        if (!(epsilon >= 0.0 && epsilon < 0.5)) throw ConfigError("epsilon must lie in [0, 0.5)");
    } else {
        lmg.validate();
        if (!(std::abs(lmg_y0) <= 1.0)) throw ConfigError("lmg y0 must satisfy |y0| <= 1");
    }
}

DriveSpec ModelSpec::drive() const {
    return is_dicke_family(kind) ? dicke.drive() : lmg.drive();
}

std::vector<std::string> component_names(ModelKind kind) {
    switch (kind) {
        case ModelKind::DickeMf: return {"alpha_re", "alpha_im", "sx", "sy", "sz"};
        case ModelKind::Lom:
        case ModelKind::Nom: return {"alpha_re", "alpha_im", "beta_re", "beta_im"};
        case ModelKind::Lmg: return {"X", "Y", "Z"};
    }
    return {};
}

Trajectory simulate(const ModelSpec& spec, const IntegratorConfig& config, double perturbation) {
    spec.validate();
    Trajectory traj;
    switch (spec.kind) {
        case ModelKind::DickeMf: {
            const auto seed = perturbed_initial_state(spec.epsilon, perturbation).first;
            traj = integrate<5>(DickeMfRhs(spec.dicke), seed.to_array(), config);
            break;
        }
        case ModelKind::Lom: {
            const auto seed = perturbed_initial_state(spec.epsilon, perturbation).second;
            traj = integrate<4>(LomRhs(spec.dicke), seed.to_array(), config);
            break;
        }
        case ModelKind::Nom: {
            const auto seed = perturbed_initial_state(spec.epsilon, perturbation).second;
            traj = integrate<4>(NomRhs(spec.dicke), seed.to_array(), config);
            break;
        }
        case ModelKind::Lmg: {
            LmgState seed = lmg_initial_state(spec.lmg_y0, spec.lmg_hemisphere);
            if (perturbation != 0.0) seed = lmg_perturbed_state(seed, perturbation);
            traj = integrate<3>(LmgRhs(spec.lmg), seed.to_array(), config);
            break;
        }
    }
    traj.model_id = std::string(to_string(spec.kind));
    traj.components = component_names(spec.kind);
    return traj;
}

double primary_observable(ModelKind kind, std::span<const double> row) {
    switch (kind) {
        case ModelKind::DickeMf: return 0.5 * row[2];
        case ModelKind::Lom:
        case ModelKind::Nom: return row[2];
        case ModelKind::Lmg: return row[0];
    }
    return 0.0;
}

std::vector<double> primary_series(const Trajectory& traj, ModelKind kind) {
    std::vector<double> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) out.push_back(primary_observable(kind, traj.row(k)));
    return out;
}

std::vector<std::vector<double>> decorrelator_series(const Trajectory& traj, ModelKind kind) {
    std::vector<std::vector<double>> out(2);
    for (auto& v : out) v.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto row = traj.row(k);
        if (kind == ModelKind::Lmg) {
            out[0].push_back(row[0]);
            out[1].push_back(row[1]);
        } else {
            out[0].push_back(primary_observable(kind, row));
            out[1].push_back(2.0 * row[0]);
        }
    }
    return out;
}

std::vector<double> polarization_series(const Trajectory& traj, ModelKind kind) {
    std::vector<double> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto row = traj.row(k);
        switch (kind) {
            case ModelKind::DickeMf: out.push_back(row[4]); break;
            case ModelKind::Lom:
            case ModelKind::Nom: out.push_back(-1.0 + 2.0 * (row[2] * row[2] + row[3] * row[3])); break;
            case ModelKind::Lmg: out.push_back(row[2]); break;
        }
    }
    return out;
}

}  // namespace dtcsim
