#include "dtcsim/dicke.hpp"

#include <cmath>

namespace dtcsim {

void DickeParams::validate() const {
    if (!(omega > 0.0) || !(omega0 > 0.0)) throw ConfigError("dicke: omega, omega0 must be > 0");
    if (!(kappa >= 0.0)) throw ConfigError("dicke: kappa must be >= 0");
    if (!(g_ratio > 0.0 && g_ratio < 1.0)) {
        throw ConfigError("dicke: g_ratio must lie in (0, 1) for the normal-phase expansion");
    }
    drive().validate();
}

double DickeParams::g0() const { return g_ratio * critical_coupling(omega, omega0, kappa); }

DriveSpec DickeParams::drive() const { return {g0(), amplitude, drive_frequency}; }

double critical_coupling(double omega, double omega0, double kappa) {
    if (!(omega > 0.0) || !(omega0 > 0.0)) {
        throw ConfigError("critical_coupling: frequencies must be > 0");
    }
    return 0.5 * std::sqrt((omega0 / omega) * (kappa * kappa + omega * omega));
}

DickeMfState spin_state_from_modes(double alpha_re, double alpha_im, double beta_re,
                                   double beta_im) {
    const double sx = 2.0 * beta_re;
    const double sy = -2.0 * beta_im;
    const double rest = 1.0 - sx * sx - sy * sy;
    if (rest < 0.0) throw ValidityError("spin_state_from_modes: |2 beta| exceeds the Bloch sphere");
    return {alpha_re, alpha_im, sx, sy, -std::sqrt(rest)};
}

std::pair<DickeMfState, OmState> np_initial_state(double epsilon) {
    return perturbed_initial_state(epsilon, 0.0);
}

std::pair<DickeMfState, OmState> perturbed_initial_state(double epsilon, double delta) {
    if (!(epsilon >= 0.0) || !(epsilon < 0.5)) {
        throw ConfigError("np_initial_state: epsilon must lie in [0, 0.5)");
    }
    const OmState om{epsilon + delta, 0.0, -epsilon + delta, 0.0};
    if (std::abs(om.beta_re) >= 0.5) throw ConfigError("perturbed seed leaves the Bloch sphere");
    return {spin_state_from_modes(om.alpha_re, om.alpha_im, om.beta_re, om.beta_im), om};
}

DickeMfState dicke_mf_rhs(const DickeParams& p, const DickeMfState& s, double t) {
    State<5> d{};
    const DickeMfRhs rhs{p};
    rhs(t, s.to_array(), d);
    return DickeMfState::from_array(d);
}

OmState lom_rhs(const DickeParams& p, const OmState& s, double t) {
    State<4> d{};
    const LomRhs rhs{p};
    rhs(t, s.to_array(), d);
    return OmState::from_array(d);
}

OmState nom_rhs(const DickeParams& p, const OmState& s, double t) {
    State<4> d{};
    const NomRhs rhs{p};
    rhs(t, s.to_array(), d);
    return OmState::from_array(d);
}

double jx_corrected(const OmState& s) {
    const double nb = excitation_fraction(s);
    if (nb > 1.0) throw ValidityError("jx_corrected: |beta|^2 > 1, oscillator mapping broken");
    return s.beta_re * std::sqrt(1.0 - nb);
}

PseudoCoordinates pseudo_coordinates(const DickeParams& p, const OmState& s) {
    return {std::sqrt(2.0 / p.omega) * s.alpha_re, -std::sqrt(2.0 * p.omega) * s.alpha_im,
            std::sqrt(2.0 / p.omega0) * s.beta_re, -std::sqrt(2.0 * p.omega0) * s.beta_im};
}

double lom_pseudo_energy(const DickeParams& p, const OmState& s) {
    const auto c = pseudo_coordinates(p, s);
    const double g = p.g0();
    return 0.5 * (c.px * c.px + p.omega * p.omega * c.x * c.x) +
           0.5 * (c.py * c.py + p.omega0 * p.omega0 * c.y * c.y) +
           2.0 * g * std::sqrt(p.omega * p.omega0) * c.x * c.y;
}

}  // namespace dtcsim
