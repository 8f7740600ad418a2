// spectral.hpp: closed-form resonance layer of the open linear oscillator
// model (polariton frequencies, eigenmodes, critical dissipation strengths,
// drive-amplitude scaling and resonance predictions), plus an independent
// eigenvalue oracle built from the 4x4 first-order system matrix.

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>

namespace dtcsim {

using cplx = std::complex<double>;

struct PolaritonSpectrum {
    cplx omega_plus;
    cplx omega_minus;
    // Upper / lower eigenmode branches -kappa/2 +- i Omega. The root of
    // Omega^2 is taken with Im(Omega) <= 0 so the upper branch is always the
    // less damped one.
    cplx eps_plus_upper;
    cplx eps_plus_lower;
    cplx eps_minus_upper;
    cplx eps_minus_lower;
    // Large-kappa asymptotes of the branches.
    cplx asym_upper_plus;
    cplx asym_upper_minus;
    cplx asym_lower_plus;
    cplx asym_lower_minus;
};

struct KappaCritical {
    std::optional<double> kappa_c_prime;   // onset of the overdamped window
    double kappa_c_dprime;                 // +inf when g_ratio == 1
    std::optional<double> kappa_plus_prime;
};

struct ResonancePrediction {
    double omega_r{0.0};
    double a_r{0.0};
    double omega_large_kappa{0.0};    // omega sqrt(1 - g'^2)
    double omega_r_large_kappa{0.0};  // 2 * omega_large_kappa
    double kappa_max{0.0};            // argmax_kappa a_r
    double delta{0.0};                // NaN at the kappa'' pole
    KappaCritical critical;
    // Inside [kappa'_c, kappa''_c] the lower mode is overdamped and omega_r
    // from 2 Re(Omega_-) drops to zero while simulations saturate above it.
    bool prediction_unreliable{false};
};

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Principal-branch Omega_{+-} = (w^2 - k^2/4 +- w sqrt(g'^2 (w^2 + k^2) - k^2))^{1/2}.
std::array<cplx, 2> polariton_frequencies(double omega, double kappa, double g_ratio);

PolaritonSpectrum eigenmodes(double omega, double kappa, double g_ratio);

// Eigenvalues of M = [[0,1,0,0],[-w+^2,0,0,-k],[0,0,0,1],[0,-k,-w-^2,0]] acting on
// (x+, x+', x-, x-'), with w+-^2 = w^2 + k^2/4 +- 2 g w,
// obtained from its characteristic polynomial (Faddeev-LeVerrier) and a
// biquadratic solve. Independent of the closed form above.
std::array<cplx, 4> eigen_oracle(double omega, double kappa, double g_ratio);

KappaCritical kappa_critical(double omega, double g_ratio);

// delta = g'^2 (k^2 + w^2) / (g'^2 (k^2 + w^2) - k^2); throws PoleError at kappa''_c.
double drive_amp_scaling(double omega, double kappa, double g_ratio);

// A_r = 2 Omega_{k>>w} kappa / (omega^2 + kappa^2)
double resonant_amplitude(double omega, double kappa, double g_ratio);

ResonancePrediction resonance_prediction(double omega, double kappa, double g_ratio);

}  // namespace dtcsim
