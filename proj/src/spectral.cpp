#include "dtcsim/spectral.hpp"

#include "dtcsim/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dtcsim {

namespace {

constexpr double kBranchEps = 1e-12;

cplx csqrt_clamped(cplx z) {
    if (std::abs(z) < kBranchEps) return {0.0, 0.0};
    return std::sqrt(z);
}

void check_inputs(double omega, double kappa, double g_ratio) {
    if (!(omega > 0.0)) throw ConfigError("spectral: omega must be > 0");
    if (!(kappa >= 0.0)) throw ConfigError("spectral: kappa must be >= 0");
    if (!(g_ratio > 0.0 && g_ratio <= 1.0)) throw ConfigError("spectral: g_ratio must lie in (0, 1]");
}

// omega^2 - kappa^2/4 and the inner radicand g'^2 (w^2 + k^2) - k^2.
std::array<cplx, 2> squared_frequencies(double omega, double kappa, double g_ratio) {
    const double base = omega * omega - 0.25 * kappa * kappa;
    const double inner = g_ratio * g_ratio * (omega * omega + kappa * kappa) - kappa * kappa;
    const cplx root = omega * csqrt_clamped(cplx(inner, 0.0));
    return {cplx(base, 0.0) + root, cplx(base, 0.0) - root};
}

cplx damped_root(cplx sq) {
    cplx r = csqrt_clamped(sq);
    if (r.imag() > 0.0) r = -r;
    return r;
}

}  // namespace

std::array<cplx, 2> polariton_frequencies(double omega, double kappa, double g_ratio) {
    check_inputs(omega, kappa, g_ratio);
    const auto sq = squared_frequencies(omega, kappa, g_ratio);
    return {csqrt_clamped(sq[0]), csqrt_clamped(sq[1])};
}

PolaritonSpectrum eigenmodes(double omega, double kappa, double g_ratio) {
    check_inputs(omega, kappa, g_ratio);
    const auto sq = squared_frequencies(omega, kappa, g_ratio);
    const cplx i(0.0, 1.0);
    const cplx half_k(-0.5 * kappa, 0.0);

    PolaritonSpectrum s;
    s.omega_plus = csqrt_clamped(sq[0]);
    s.omega_minus = csqrt_clamped(sq[1]);
    const cplx wp = damped_root(sq[0]);
    const cplx wm = damped_root(sq[1]);
    s.eps_plus_upper = half_k + i * wp;
    s.eps_plus_lower = half_k - i * wp;
    s.eps_minus_upper = half_k + i * wm;
    s.eps_minus_lower = half_k - i * wm;

    const double w_inf = omega * std::sqrt(1.0 - g_ratio * g_ratio);
    s.asym_upper_plus = {0.0, w_inf};
    s.asym_upper_minus = {0.0, -w_inf};
    s.asym_lower_plus = {-kappa, w_inf};
    s.asym_lower_minus = {-kappa, -w_inf};
    return s;
}

std::array<cplx, 4> eigen_oracle(double omega, double kappa, double g_ratio) {
    check_inputs(omega, kappa, g_ratio);
    const double g = g_ratio * critical_coupling(omega, omega, kappa);
    const double wp2 = omega * omega + 0.25 * kappa * kappa + 2.0 * g * omega;
    const double wm2 = omega * omega + 0.25 * kappa * kappa - 2.0 * g * omega;

    using Mat = std::array<std::array<double, 4>, 4>;
    // Each mode is driven by the other's velocity, x+'' + w+^2 x+ = -k x-'.
    const Mat m{{{0.0, 1.0, 0.0, 0.0},
                 {-wp2, 0.0, 0.0, -kappa},
                 {0.0, 0.0, 0.0, 1.0},
                 {0.0, -kappa, -wm2, 0.0}}};

    // Faddeev-LeVerrier: det(lambda I - M) = lambda^4 + c1 lambda^3 + ... + c4.
    auto matmul = [](const Mat& a, const Mat& b) {
        Mat r{};
        for (int r_ = 0; r_ < 4; ++r_)
            for (int c = 0; c < 4; ++c) {
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) acc += a[r_][k] * b[k][c];
                r[r_][c] = acc;
            }
        return r;
    };
    std::array<double, 5> c{1.0, 0.0, 0.0, 0.0, 0.0};
    Mat mk{};  // M_0 = 0
    for (int k = 1; k <= 4; ++k) {
        Mat next = matmul(m, mk);
        for (int d = 0; d < 4; ++d) next[d][d] += c[k - 1];
        mk = next;
        const Mat am = matmul(m, mk);
        double trace = 0.0;
        for (int d = 0; d < 4; ++d) trace += am[d][d];
        c[k] = -trace / k;
    }

    // M has zero odd coefficients (c1 = c3 = 0): a quadratic in mu = lambda^2.
    const cplx b(c[2], 0.0);
    const cplx cc(c[4], 0.0);
    const cplx disc = std::sqrt(b * b - 4.0 * cc);
    // Numerically stable pair of roots.
    const cplx q = -0.5 * (b + (b.real() >= 0.0 ? disc : -disc));
    cplx mu1 = q;
    cplx mu2 = (std::abs(q) > 0.0) ? cc / q : cplx(0.0, 0.0);
    const cplx l1 = std::sqrt(mu1);
    const cplx l2 = std::sqrt(mu2);
    return {l1, -l1, l2, -l2};
}

KappaCritical kappa_critical(double omega, double g_ratio) {
    if (!(omega > 0.0)) throw ConfigError("kappa_critical: omega must be > 0");
    if (!(g_ratio > 0.0 && g_ratio <= 1.0)) {
        throw ConfigError("kappa_critical: g_ratio must lie in (0, 1]");
    }
    KappaCritical out;
    const double g2 = g_ratio * g_ratio;
    const double disc = 4.0 * g2 - 3.0;
    if (disc >= 0.0) {
        const double root = g_ratio * std::sqrt(disc);
        out.kappa_c_prime = 2.0 * omega * std::sqrt(std::max(0.0, 2.0 * g2 - 1.0 - root));
        out.kappa_plus_prime = 2.0 * omega * std::sqrt(2.0 * g2 - 1.0 + root);
    }
    out.kappa_c_dprime = (g_ratio >= 1.0) ? std::numeric_limits<double>::infinity()
                                          : omega / std::sqrt(1.0 / g2 - 1.0);
    return out;
}

double drive_amp_scaling(double omega, double kappa, double g_ratio) {
    check_inputs(omega, kappa, g_ratio);
    const double num = g_ratio * g_ratio * (kappa * kappa + omega * omega);
    const double den = num - kappa * kappa;
    if (std::abs(den) < 1e-12) throw PoleError("drive_amp_scaling: kappa at the kappa''_c pole");
    return num / den;
}

double resonant_amplitude(double omega, double kappa, double g_ratio) {
    check_inputs(omega, kappa, g_ratio);
    const double w_inf = omega * std::sqrt(1.0 - g_ratio * g_ratio);
    return 2.0 * w_inf * kappa / (omega * omega + kappa * kappa);
}

ResonancePrediction resonance_prediction(double omega, double kappa, double g_ratio) {
    check_inputs(omega, kappa, g_ratio);
    ResonancePrediction p;
    const auto freqs = polariton_frequencies(omega, kappa, g_ratio);
    p.omega_r = 2.0 * freqs[1].real();
    p.a_r = resonant_amplitude(omega, kappa, g_ratio);
    p.omega_large_kappa = omega * std::sqrt(1.0 - g_ratio * g_ratio);
    p.omega_r_large_kappa = 2.0 * p.omega_large_kappa;
    // d/dk [k / (w^2 + k^2)] = 0  =>  k = w
    p.kappa_max = omega;
    try {
        p.delta = drive_amp_scaling(omega, kappa, g_ratio);
    } catch (const PoleError&) {
        p.delta = std::numeric_limits<double>::quiet_NaN();
    }
    p.critical = kappa_critical(omega, g_ratio);
    if (p.critical.kappa_c_prime) {
        p.prediction_unreliable =
            kappa >= *p.critical.kappa_c_prime && kappa <= p.critical.kappa_c_dprime;
    }
    return p;
}

}  // namespace dtcsim
