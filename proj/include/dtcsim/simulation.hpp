// simulation.hpp: one entry point that seeds, integrates and extracts
// observables for any of the four supported models.

#pragma once

#include "dtcsim/dicke.hpp"
#include "dtcsim/dynamics.hpp"
#include "dtcsim/lmg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dtcsim {

enum class ModelKind { DickeMf, Lom, Nom, Lmg };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);
inline bool is_dicke_family(ModelKind k) { return k != ModelKind::Lmg; }

struct ModelSpec {
    ModelKind kind{ModelKind::Nom};
    DickeParams dicke{};
    LmgParams lmg{};
    double epsilon{0.01};
    double lmg_y0{5e-8};
    Hemisphere lmg_hemisphere{Hemisphere::South};

    void validate() const;
    DriveSpec drive() const;
};

// Integrates the model from its seed, displaced by `perturbation` (the
// decorrelator delta) when non-zero.
Trajectory simulate(const ModelSpec& spec, const IntegratorConfig& config,
                    double perturbation = 0.0);

// J_x/N for the Dicke family, X for LMG.
double primary_observable(ModelKind kind, std::span<const double> row);
std::vector<double> primary_series(const Trajectory& traj, ModelKind kind);

// {J_x/N, 2 Re(alpha)} for the Dicke family, {X, Y} for LMG.
std::vector<std::vector<double>> decorrelator_series(const Trajectory& traj, ModelKind kind);

// Z for LMG, s_z for Dicke MF, -1 + 2|beta|^2 for the oscillator models.
std::vector<double> polarization_series(const Trajectory& traj, ModelKind kind);

std::vector<std::string> component_names(ModelKind kind);

}  // namespace dtcsim
