// dicke.hpp: mean-field open Dicke model and its linear / nonlinear
// oscillator reductions, all in intensive variables alpha = a/sqrt(N),
// beta = b/sqrt(N), s = 2J/N.

#pragma once

#include "dtcsim/dynamics.hpp"

#include <utility>

namespace dtcsim {

struct DickeParams {
    double omega{1.0};
    double omega0{1.0};
    double kappa{0.0};
    double g_ratio{0.9};  // g0 / g_c
    double amplitude{0.0};
    double drive_frequency{0.0};

    void validate() const;
    double g0() const;
    // Coupling drive; its base is g_ratio * g_c.
    DriveSpec drive() const;
};

struct DickeMfState {
    double alpha_re{0.0};
    double alpha_im{0.0};
    double sx{0.0};
    double sy{0.0};
    double sz{-1.0};

    State<5> to_array() const { return {alpha_re, alpha_im, sx, sy, sz}; }
    static DickeMfState from_array(const State<5>& a) { return {a[0], a[1], a[2], a[3], a[4]}; }
    double spin_norm_sq() const { return sx * sx + sy * sy + sz * sz; }
};

struct OmState {
    double alpha_re{0.0};
    double alpha_im{0.0};
    double beta_re{0.0};
    double beta_im{0.0};

    State<4> to_array() const { return {alpha_re, alpha_im, beta_re, beta_im}; }
    static OmState from_array(const State<4>& a) { return {a[0], a[1], a[2], a[3]}; }
};

// Cavity and atomic pseudo-position / momentum of a (closed-form) OM state.
struct PseudoCoordinates {
    double x, px, y, py;
};

class ValidityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// g_c = (1/2) sqrt((omega0/omega) (kappa^2 + omega^2))
double critical_coupling(double omega, double omega0, double kappa);
inline double critical_coupling(const DickeParams& p) {
    return critical_coupling(p.omega, p.omega0, p.kappa);
}

// OM seed (alpha, beta) = (eps, -eps); Dicke seed alpha = eps,
// s = (-2 eps, 0, -sqrt(1 - 4 eps^2)). Rejects eps outside [0, 0.5).
std::pair<DickeMfState, OmState> np_initial_state(double epsilon);

// Seed displaced by delta in both a and b, as used for the decorrelator.
std::pair<DickeMfState, OmState> perturbed_initial_state(double epsilon, double delta);

// Spin picture of an atomic amplitude: sx = 2 Re b, sy = -2 Im b, sz on the
// southern hemisphere.
DickeMfState spin_state_from_modes(double alpha_re, double alpha_im, double beta_re,
                                   double beta_im);

struct DickeMfRhs {
    DickeParams params;
    DriveSpec drive;

    explicit DickeMfRhs(const DickeParams& p) : params(p), drive(p.drive()) {}

    void operator()(double t, const State<5>& s, State<5>& d) const {
        const double g = drive_value(drive, t);
        const double ar = s[0], ai = s[1], sx = s[2], sy = s[3], sz = s[4];
        d[0] = params.omega * ai - params.kappa * ar;
        d[1] = -params.omega * ar - g * sx - params.kappa * ai;
        d[2] = -params.omega0 * sy;
        d[3] = params.omega0 * sx - 4.0 * g * ar * sz;
        d[4] = 4.0 * g * ar * sy;
    }
};

struct LomRhs {
    DickeParams params;
    DriveSpec drive;

    explicit LomRhs(const DickeParams& p) : params(p), drive(p.drive()) {}

    void operator()(double t, const State<4>& s, State<4>& d) const {
        const double g = drive_value(drive, t);
        const double ar = s[0], ai = s[1], br = s[2], bi = s[3];
        d[0] = params.omega * ai - params.kappa * ar;
        d[1] = -params.omega * ar - 2.0 * g * br - params.kappa * ai;
        d[2] = params.omega0 * bi;
        d[3] = -params.omega0 * br - 2.0 * g * ar;
    }
};

// First-order Holstein-Primakoff truncation. The atom-equation factor
// 1 - (2|b|^2 + b^2)/2 is complex; both of its parts enter.
struct NomRhs {
    DickeParams params;
    DriveSpec drive;

    explicit NomRhs(const DickeParams& p) : params(p), drive(p.drive()) {}

    void operator()(double t, const State<4>& s, State<4>& d) const {
        const double g = drive_value(drive, t);
        const double ar = s[0], ai = s[1], br = s[2], bi = s[3];
        const double nb = br * br + bi * bi;
        const double cav_factor = 1.0 - 0.5 * nb;
        const double atom_re = 1.0 - 0.5 * (3.0 * br * br + bi * bi);
        const double atom_im = -br * bi;
        d[0] = params.omega * ai - params.kappa * ar;
        d[1] = -params.omega * ar - 2.0 * g * br * cav_factor - params.kappa * ai;
        d[2] = params.omega0 * bi + 2.0 * g * ar * atom_im;
        d[3] = -params.omega0 * br - 2.0 * g * ar * atom_re;
    }
};

// Convenience wrappers returning the derivative as a state struct.
DickeMfState dicke_mf_rhs(const DickeParams& p, const DickeMfState& s, double t);
OmState lom_rhs(const DickeParams& p, const OmState& s, double t);
OmState nom_rhs(const DickeParams& p, const OmState& s, double t);

// J_x / N views.
inline double jx_observable(const DickeMfState& s) noexcept { return 0.5 * s.sx; }
inline double jx_observable(const OmState& s) noexcept { return s.beta_re; }
// Re(beta) sqrt(1 - |beta|^2); throws ValidityError once |beta|^2 > 1.
double jx_corrected(const OmState& s);

inline double excitation_fraction(const OmState& s) noexcept {
    return s.beta_re * s.beta_re + s.beta_im * s.beta_im;
}

PseudoCoordinates pseudo_coordinates(const DickeParams& p, const OmState& s);
// Conserved by the closed (kappa = 0), undriven LOM.
double lom_pseudo_energy(const DickeParams& p, const OmState& s);

}  // namespace dtcsim
