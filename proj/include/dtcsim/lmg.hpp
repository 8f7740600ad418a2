// lmg.hpp: semiclassical open Lipkin-Meshkov-Glick model with anisotropy
// gamma and collective decay Gamma, in the rescaled spin variables
// X = 2<Jx>/N, Y = 2<Jy>/N, Z = 2<Jz>/N.

#pragma once

#include "dtcsim/dynamics.hpp"

#include <optional>
#include <vector>

namespace dtcsim {

struct LmgParams {
    double omega0{1.0};
    double lambda0{0.8};
    double gamma{0.0};  // anisotropy in [-1, 1]
    double Gamma{0.0};  // collective decay, >= 0
    double amplitude{0.0};
    double drive_frequency{0.0};

    void validate() const;
    DriveSpec drive() const { return {lambda0, amplitude, drive_frequency}; }
};

struct LmgState {
    double X{0.0};
    double Y{0.0};
    double Z{-1.0};

    State<3> to_array() const { return {X, Y, Z}; }
    static LmgState from_array(const State<3>& a) { return {a[0], a[1], a[2]}; }
    double norm_sq() const { return X * X + Y * Y + Z * Z; }
};

struct LmgRhs {
    LmgParams params;
    DriveSpec drive;

    explicit LmgRhs(const LmgParams& p) : params(p), drive(p.drive()) {}

    void operator()(double t, const State<3>& s, State<3>& d) const {
        const double lam = drive_value(drive, t);
        const double x = s[0], y = s[1], z = s[2];
        const double hg = 0.5 * params.Gamma;
        d[0] = -params.omega0 * y - lam * params.gamma * y * z + hg * x * z;
        d[1] = params.omega0 * x + lam * x * z + hg * y * z;
        d[2] = -lam * x * y + lam * params.gamma * x * y - hg * (x * x + y * y);
    }
};

LmgState lmg_rhs(const LmgParams& p, const LmgState& s, double t);

enum class Hemisphere { South, North };

// X0 = 0, Y0 = y0, |Z0| = sqrt(1 - y0^2). The default seed sits next to the
// spin-down normal phase.
LmgState lmg_initial_state(double y0 = 5e-8, Hemisphere hemisphere = Hemisphere::South);
// Seed displaced by delta in X and Y, renormalised onto the sphere.
LmgState lmg_perturbed_state(const LmgState& seed, double delta);

struct LmgSteadyState {
    int branch{+1};
    double Xs{0.0};
    double Ys{0.0};
    double Zs{-1.0};
    double Lambda{0.0};
};

struct LmgSteadyStates {
    LmgState normal{0.0, 0.0, -1.0};
    std::vector<LmgSteadyState> symmetry_broken;  // empty, or the +/- pair
    // Set when lambda^2 (1 - gamma)^2 < Gamma^2, i.e. Lambda is complex.
    bool overdamped{false};
};

// Static-lambda steady states (the drive is ignored).
LmgSteadyStates lmg_steady_state(const LmgParams& p);

struct CriticalRoot {
    double value{0.0};
    bool real{false};
};

struct LambdaCritical {
    std::vector<CriticalRoot> roots;  // one root for gamma == 0, two otherwise
    bool has_real_transition() const;
};

LambdaCritical lambda_critical(const LmgParams& p);

struct NaturalFrequency {
    double value{0.0};       // |radicand|^{1/2}
    bool imaginary{false};   // radicand < 0: symmetry-broken side
    // omega_r = 2 Omega_0 / n
    double resonance(int n) const { return 2.0 * value / n; }
};

// Omega_0 = sqrt((omega0 - lambda0)(omega0 - gamma lambda0))
NaturalFrequency natural_frequency(const LmgParams& p);

// Isotropic (gamma = 1) closed forms.
// Z(t) = tanh(artanh(Z0) - Gamma t / 2), the solution of dZ/dt = -(Gamma/2)(1 - Z^2).
double isotropic_z_analytic(double Gamma, double Z0, double t);
// Gamma = 0: X(t) = R sin(theta(t) + phi0) with R = sqrt(X0^2 + Y0^2),
// theta(t) = -(omega0 + lambda0 Z0) t + (lambda0 Z0 A / omega_d)(cos(omega_d t) - 1).
double isotropic_x_analytic(const LmgParams& p, const LmgState& state0, double t);

struct DissipationChannels {
    double Gamma_a{0.0};
    double Gamma_b{0.0};
    double alpha{0.0};
    double beta{0.0};
};

// Effective collective decay for the three supported master equations
// (gamma in {-1, 0, 1}).
double gamma_dissipation_map(int gamma_case, const DissipationChannels& ch);

}  // namespace dtcsim
