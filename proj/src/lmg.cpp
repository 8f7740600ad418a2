#include "dtcsim/lmg.hpp"

#include <cmath>

namespace dtcsim {

void LmgParams::validate() const {
    if (!(omega0 > 0.0)) throw ConfigError("lmg: omega0 must be > 0");
    if (!std::isfinite(lambda0)) throw ConfigError("lmg: lambda0 must be finite");
    if (!(gamma >= -1.0 && gamma <= 1.0)) throw ConfigError("lmg: gamma must lie in [-1, 1]");
    if (!(Gamma >= 0.0)) throw ConfigError("lmg: Gamma must be >= 0");
    drive().validate();
}

LmgState lmg_rhs(const LmgParams& p, const LmgState& s, double t) {
    State<3> d{};
    const LmgRhs rhs{p};
    rhs(t, s.to_array(), d);
    return LmgState::from_array(d);
}

LmgState lmg_initial_state(double y0, Hemisphere hemisphere) {
    if (!(std::abs(y0) <= 1.0)) throw ConfigError("lmg_initial_state: |Y0| must be <= 1");
    const double z = std::sqrt(1.0 - y0 * y0);
    return {0.0, y0, hemisphere == Hemisphere::South ? -z : z};
}

LmgState lmg_perturbed_state(const LmgState& seed, double delta) {
    const double x = seed.X + delta;
    const double y = seed.Y + delta;
    const double rest = 1.0 - x * x - y * y;
    if (rest < 0.0) throw ConfigError("lmg_perturbed_state: perturbation leaves the sphere");
    const double z = std::sqrt(rest);
    return {x, y, seed.Z < 0.0 ? -z : z};
}

LmgSteadyStates lmg_steady_state(const LmgParams& p) {
    LmgSteadyStates out;
    const double lam = p.lambda0;
    const double gm = 1.0 - p.gamma;
    const double gp = 1.0 + p.gamma;
    const double lg = lam * gm;
    const double rad = lg * lg - p.Gamma * p.Gamma;
    if (rad < 0.0) {
        out.overdamped = true;
        return out;
    }
    if (!(lg > 0.0)) return out;

    const double s = std::sqrt(rad);
    const double Lambda = 0.5 * (lam * gp + s);
    if (!(Lambda > 0.0)) return out;
    const double Zs = -p.omega0 / Lambda;
    if (std::abs(Zs) > 1.0) return out;

    // Xs^2 = Gamma^2 (L^2 - w0^2) / (4 L^2 lambda g- (lambda - L)), rewritten
    // with lambda - L = Gamma^2 / (2 (lambda g- + s)) so that Gamma -> 0 is regular.
    const double xs2 = (Lambda * Lambda - p.omega0 * p.omega0) * (lg + s) /
                       (2.0 * Lambda * Lambda * lg);
    if (xs2 < 0.0) return out;
    const double xs = std::sqrt(xs2);
    // Ys = 2 (L - lambda) Xs / Gamma
    const double ys = -p.Gamma * xs / (lg + s);
    out.symmetry_broken.push_back({+1, xs, ys, Zs, Lambda});
    out.symmetry_broken.push_back({-1, -xs, -ys, Zs, Lambda});
    return out;
}

bool LambdaCritical::has_real_transition() const {
    for (const auto& r : roots)
        if (r.real) return true;
    return false;
}

LambdaCritical lambda_critical(const LmgParams& p) {
    LambdaCritical out;
    const double w0 = p.omega0;
    if (p.gamma == 0.0) {
        out.roots.push_back({p.Gamma * p.Gamma / (4.0 * w0) + w0, true});
        return out;
    }
    const double gm = 1.0 - p.gamma;
    const double gp = 1.0 + p.gamma;
    const double rad = w0 * w0 * gm * gm - p.Gamma * p.Gamma * p.gamma;
    if (rad < 0.0) {
        out.roots.push_back({w0 * gp / (2.0 * p.gamma), false});
        out.roots.push_back({w0 * gp / (2.0 * p.gamma), false});
        return out;
    }
    const double r = std::sqrt(rad);
    out.roots.push_back({(r + w0 * gp) / (2.0 * p.gamma), true});
    out.roots.push_back({(-r + w0 * gp) / (2.0 * p.gamma), true});
    return out;
}

NaturalFrequency natural_frequency(const LmgParams& p) {
    const double rad = (p.omega0 - p.lambda0) * (p.omega0 - p.gamma * p.lambda0);
    return {std::sqrt(std::abs(rad)), rad < 0.0};
}

double isotropic_z_analytic(double Gamma, double Z0, double t) {
    if (!(std::abs(Z0) <= 1.0)) throw ConfigError("isotropic_z_analytic: |Z0| must be <= 1");
    if (std::abs(Z0) == 1.0 || Gamma == 0.0) return Z0;
    return std::tanh(std::atanh(Z0) - 0.5 * Gamma * t);
}

double isotropic_x_analytic(const LmgParams& p, const LmgState& state0, double t) {
    if (p.gamma != 1.0) throw std::domain_error("isotropic_x_analytic: requires gamma = 1");
    if (p.Gamma != 0.0) throw std::domain_error("isotropic_x_analytic: requires Gamma = 0");
    const double r = std::hypot(state0.X, state0.Y);
    if (r == 0.0) return 0.0;
    const double phi0 = std::atan2(state0.X, state0.Y);
    const double z0 = state0.Z;
    double theta = -(p.omega0 + p.lambda0 * z0) * t;
    if (p.amplitude != 0.0 && p.drive_frequency > 0.0) {
        theta += p.lambda0 * z0 * p.amplitude / p.drive_frequency *
                 (std::cos(p.drive_frequency * t) - 1.0);
    }
    return r * std::sin(theta + phi0);
}

double gamma_dissipation_map(int gamma_case, const DissipationChannels& ch) {
    switch (gamma_case) {
        case -1:
            return ch.beta * ch.beta * ch.Gamma_b - ch.alpha * ch.alpha * ch.Gamma_a;
        case 0:
            return -0.5 * ch.Gamma_b;
        case 1:
            return 0.5 * (ch.Gamma_a - ch.Gamma_b);
        default:
            throw std::domain_error("gamma_dissipation_map: only gamma in {-1, 0, 1} is defined");
    }
}

}  // namespace dtcsim
