#include "dtcsim/classifier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

namespace dtcsim {

namespace {

// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// |DFT| of x zero-padded to `len`, bins 0..len/2.
std::vector<double> padded_magnitude(const std::vector<double>& x, std::size_t len) {
    std::vector<double> in(len, 0.0);
    std::copy(x.begin(), x.end(), in.begin());
    std::vector<fftw_complex> out(len / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(len), in.data(), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<double> mag(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) mag[k] = std::hypot(out[k][0], out[k][1]);
    return mag;
}

// Energy of the least-squares projection of x onto {cos wt, sin wt}.
double tone_power(const std::vector<double>& x, double spacing, double w) {
    const double center = 0.5 * static_cast<double>(x.size() - 1);
    double cc = 0, ss = 0, cs = 0, xc = 0, xs = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double t = (static_cast<double>(k) - center) * spacing;
        const double c = std::cos(w * t), s = std::sin(w * t);
        cc += c * c;
        ss += s * s;
        cs += c * s;
        xc += x[k] * c;
        xs += x[k] * s;
    }
    const double det = cc * ss - cs * cs;
    if (det <= 0.0) return 0.0;
    const double a = (ss * xc - cs * xs) / det;
    const double b = (cc * xs - cs * xc) / det;
    return a * xc + b * xs;
}

double refine_tone(const std::vector<double>& x, double spacing, double lo, double hi) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = tone_power(x, spacing, c), fd = tone_power(x, spacing, d);
    for (int it = 0; it < 40; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = tone_power(x, spacing, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = tone_power(x, spacing, d);
        }
    }
    return 0.5 * (a + b);
}

double mean_of(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::size_t tail_start(std::size_t n, double fraction) {
    const auto len = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction));
    return n - std::min(n, std::max<std::size_t>(len, 1));
}

bool evenly_spaced(const std::vector<SpectralPeak>& peaks, double bin) {
    if (peaks.size() < 3) return false;
    std::vector<double> f;
    for (const auto& p : peaks) f.push_back(p.freq);
    std::sort(f.begin(), f.end());
    double spacing = f[1] - f[0];
    for (std::size_t i = 1; i < f.size(); ++i) spacing = std::min(spacing, f[i] - f[i - 1]);
    if (spacing <= bin) return false;
    for (std::size_t i = 1; i < f.size(); ++i) {
        const double ratio = (f[i] - f[i - 1]) / spacing;
        if (std::abs(ratio - std::round(ratio)) * spacing > 1.5 * bin) return false;
    }
    return true;
}

}  // namespace

bool normal_phase_series(std::span<const double> series, const ClassifierConfig& config) {
    const std::size_t n = series.size();
    if (n == 0) return true;
    const std::size_t start = tail_start(n, config.envelope_window);
    const auto head_len = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(static_cast<double>(n) * config.head_fraction)));
    double tail_max = 0.0, head_max = 0.0;
    for (std::size_t k = start; k < n; ++k) tail_max = std::max(tail_max, std::abs(series[k]));
    for (std::size_t k = 0; k < std::min(head_len, n); ++k) {
        head_max = std::max(head_max, std::abs(series[k]));
    }
    return tail_max <= config.np_threshold || tail_max <= config.np_growth_factor * head_max;
}

bool is_normal_phase(const Trajectory& traj, ModelKind kind, const ClassifierConfig& config) {
    if (traj.diverged) return false;
    const auto series = primary_series(traj, kind);
    for (double v : series) {
        if (std::abs(v) > config.ub_threshold) return false;
    }
    return normal_phase_series(series, config);
}

std::string_view to_string(PhaseKind kind) {
    switch (kind) {
        case PhaseKind::NP: return "NP";
        case PhaseKind::SB: return "SB";
        case PhaseKind::UB: return "UB";
        case PhaseKind::DTC_2T: return "DTC_2T";
        case PhaseKind::DTC_HO: return "DTC_HO";
        case PhaseKind::NB: return "NB";
        case PhaseKind::SBB: return "SBB";
        case PhaseKind::Chaotic: return "Chaotic";
        case PhaseKind::OtherNonDTC: return "OtherNonDTC";
    }
    return "unknown";
}

PhaseKind phase_kind_from_string(std::string_view name) {
    for (auto k : {PhaseKind::NP, PhaseKind::SB, PhaseKind::UB, PhaseKind::DTC_2T,
                   PhaseKind::DTC_HO, PhaseKind::NB, PhaseKind::SBB, PhaseKind::Chaotic,
                   PhaseKind::OtherNonDTC}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown phase label '" + std::string(name) + "'");
}

std::string PhaseLabel::text() const {
    if (kind == PhaseKind::DTC_HO) {
        return "DTC_HO(n=" + std::to_string(diagnostics.response_order_n) + ")";
    }
    return std::string(to_string(kind));
}

void ClassifierConfig::validate() const {
    for (double v : {np_threshold, ub_threshold, d2_threshold, sigma_amp_threshold,
                     perturbation_delta, subharmonic_tolerance, peak_floor}) {
        if (!(v > 0.0)) throw ConfigError("classifier: thresholds must be positive");
    }
    if (!(fft_window_periods >= 4.0)) throw ConfigError("classifier: fft_window_periods must be >= 4");
    if (!(envelope_window > 0.0 && envelope_window <= 1.0)) {
        throw ConfigError("classifier: envelope_window must lie in (0, 1]");
    }
    if (!(head_fraction > 0.0 && head_fraction < 1.0)) {
        throw ConfigError("classifier: head_fraction must lie in (0, 1)");
    }
    if (!(np_growth_factor >= 1.0)) throw ConfigError("classifier: np_growth_factor must be >= 1");
}

double decorrelator(std::span<const std::vector<double>> original,
                    std::span<const std::vector<double>> perturbed) {
    if (original.size() != perturbed.size()) {
        throw std::invalid_argument("decorrelator: observable counts differ");
    }
    if (original.empty()) return 0.0;
    const std::size_t n = original.front().size();
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (original[i].size() != n || perturbed[i].size() != n) {
            throw std::invalid_argument("decorrelator: trajectories differ in length");
        }
    }
    if (n == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < original.size(); ++i) {
            const double o = original[i][k], p = perturbed[i][k];
            const double diff = o * o - p * p;
            acc += diff * diff;
        }
    }
    return acc / static_cast<double>(n);
}

double decorrelator(const Trajectory& original, const Trajectory& perturbed, ModelKind kind) {
    if (original.size() != perturbed.size() || original.dt != perturbed.dt ||
        original.stride != perturbed.stride) {
        throw std::invalid_argument("decorrelator: trajectories sampled differently");
    }
    const auto a = decorrelator_series(original, kind);
    const auto b = decorrelator_series(perturbed, kind);
    return decorrelator(a, b);
}

Envelope amplitude_envelope(std::span<const double> series, const ClassifierConfig& config) {
    Envelope env;
    const std::size_t start = tail_start(series.size(), config.envelope_window);
    const auto tail = series.subspan(start);
    if (tail.size() < 3) return env;
    // Centre on whole cycles: a plain tail mean over a fractional number of
    // periods leaves an offset that alternates the half-cycle maxima.
    double mean = mean_of(tail);
    {
        std::size_t first = tail.size(), last = 0;
        for (std::size_t k = 1; k < tail.size(); ++k) {
            if (tail[k - 1] < mean && tail[k] >= mean) {
                first = std::min(first, k);
                last = k;
            }
        }
        if (first < last) mean = mean_of(tail.subspan(first, last - first));
    }

    int sign = 0;
    double seg_max = 0.0;
    bool first_segment = true;
    for (double v : tail) {
        const double x = v - mean;
        const int s = x > 0.0 ? 1 : (x < 0.0 ? -1 : sign);
        if (s != sign && sign != 0) {
            if (!first_segment) env.peaks.push_back(seg_max);
            first_segment = false;
            seg_max = 0.0;
        }
        sign = s;
        seg_max = std::max(seg_max, std::abs(x));
    }
    // The trailing segment is incomplete and is dropped.

    if (env.peaks.size() < 4) return env;
    const double m = mean_of(env.peaks);
    if (!(m > 0.0)) return env;
    double var = 0.0;
    for (double p : env.peaks) var += (p - m) * (p - m);
    var /= static_cast<double>(env.peaks.size());
    env.sigma_amp = std::sqrt(var) / m;
    env.sufficient = true;
    return env;
}

ResponseFrequency dominant_response_frequency(std::span<const double> series,
                                              double sample_spacing, double omega_d,
                                              const ClassifierConfig& config) {
    ResponseFrequency res;
    const std::size_t n = series.size();
    if (n < 8 || !(sample_spacing > 0.0)) return res;

    std::size_t m = 0;
    if (omega_d > 0.0) {
        const double window = config.fft_window_periods * 2.0 * std::numbers::pi / omega_d;
        m = static_cast<std::size_t>(std::llround(window / sample_spacing));
    }
    if (m == 0 || m > n) m = n - tail_start(n, 0.5);
    if (m < 8) return res;

    std::vector<double> x(series.end() - static_cast<std::ptrdiff_t>(m), series.end());
    const double mean = mean_of(x);
    double amp = 0.0;
    for (auto& v : x) {
        v -= mean;
        amp = std::max(amp, std::abs(v));
    }
    res.bin_width = 2.0 * std::numbers::pi / (static_cast<double>(m) * sample_spacing);
    if (!(amp > 0.0)) return res;

    const std::size_t len = next_pow2(4 * m);
    const double df = 2.0 * std::numbers::pi / (static_cast<double>(len) * sample_spacing);
    const auto kmin = static_cast<std::size_t>(std::ceil(res.bin_width / df));

    const auto mag = padded_magnitude(x, len);
    std::size_t kbest = 0;
    for (std::size_t k = kmin; k < mag.size(); ++k) {
        if (kbest == 0 || mag[k] > mag[kbest]) kbest = k;
    }
    if (kbest == 0 || !(mag[kbest] > 0.0)) return res;

    const double coarse = static_cast<double>(kbest) * df;
    const double lo = std::max(0.5 * res.bin_width, coarse - 0.5 * res.bin_width);
    const double freq = refine_tone(x, sample_spacing, lo, coarse + 0.5 * res.bin_width);
    res.freq = freq;
    if (omega_d > 0.0 && freq > 0.0) {
        const double ratio = omega_d / freq;
        const long order = std::lround(ratio);
        if (order >= 1 && std::abs(ratio - static_cast<double>(order)) < config.subharmonic_tolerance) {
            res.order = static_cast<int>(order);
        }
    }

    // Peak inventory from a Hann-windowed spectrum (sidelobes below 3%).
    std::vector<double> xw(x);
    for (std::size_t k = 0; k < m; ++k) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                              static_cast<double>(m - 1));
        xw[k] *= w;
    }
    const auto hmag = padded_magnitude(xw, len);
    double hmax = 0.0;
    for (std::size_t k = kmin; k < hmag.size(); ++k) hmax = std::max(hmax, hmag[k]);
    if (hmax > 0.0) {
        for (std::size_t k = std::max<std::size_t>(kmin, 1); k + 1 < hmag.size(); ++k) {
            if (hmag[k] >= hmag[k - 1] && hmag[k] > hmag[k + 1] &&
                hmag[k] >= config.peak_floor * hmax) {
                res.peaks.push_back({static_cast<double>(k) * df, hmag[k] / hmax});
            }
        }
    }
    return res;
}

PhaseLabel classify(const Trajectory& original, const Trajectory& perturbed, ModelKind kind,
                    const DriveSpec& drive, const ClassifierConfig& config) {
    config.validate();
    PhaseLabel label;
    auto& diag = label.diagnostics;

    const auto series = primary_series(original, kind);
    for (double v : series) diag.max_amp = std::max(diag.max_amp, std::abs(v));

    if (original.diverged || perturbed.diverged || diag.max_amp > config.ub_threshold) {
        label.kind = PhaseKind::UB;
        return label;
    }
    if (series.empty()) {
        label.note = "empty trajectory";
        return label;
    }

    const std::size_t n = series.size();
    const std::size_t start = tail_start(n, config.envelope_window);
    const std::span<const double> tail(series.data() + start, n - start);
    if (normal_phase_series(series, config)) {
        label.kind = PhaseKind::NP;
        return label;
    }

    const double omega_d = drive.amplitude > 0.0 ? drive.frequency : 0.0;
    const auto resp = dominant_response_frequency(series, original.sample_spacing(), omega_d, config);
    diag.dominant_freq = resp.freq.value_or(0.0);
    diag.response_order_n = resp.order.value_or(0);

    const double tail_mean = mean_of(tail);
    double osc = 0.0;
    for (double v : tail) osc = std::max(osc, std::abs(v - tail_mean));
    const bool undriven = drive.amplitude == 0.0 || drive.frequency == 0.0;
    if ((kind == ModelKind::Lmg && undriven) ||
        (std::abs(tail_mean) > config.np_threshold &&
         osc <= config.sigma_amp_threshold * std::abs(tail_mean))) {
        label.kind = PhaseKind::SB;
        return label;
    }

    // Averaged over the tail only: seeds that differ by delta ring up at
    // different times, and that transient says nothing about chaos.
    {
        auto a = decorrelator_series(original, kind);
        auto b = decorrelator_series(perturbed, kind);
        if (b.front().size() != a.front().size()) {
            throw std::invalid_argument("classify: trajectories differ in length");
        }
        for (auto* set : {&a, &b}) {
            for (auto& v : *set) v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(start));
        }
        diag.d2 = decorrelator(a, b);
    }
    const auto env = amplitude_envelope(series, config);
    diag.sigma_amp = env.sufficient ? env.sigma_amp : 0.0;
    if (!env.sufficient) label.note = "insufficient envelope maxima";

    if (diag.d2 > config.d2_threshold) {
        label.kind = PhaseKind::Chaotic;
        return label;
    }

    if (env.sufficient && env.sigma_amp <= config.sigma_amp_threshold && resp.order) {
        if (*resp.order == 2) {
            label.kind = PhaseKind::DTC_2T;
            return label;
        }
        if (*resp.order > 2) {
            label.kind = PhaseKind::DTC_HO;
            return label;
        }
    }

    if (kind == ModelKind::Lmg && evenly_spaced(resp.peaks, resp.bin_width)) {
        const auto z = polarization_series(original, kind);
        const double zbar = mean_of(std::span<const double>(z).subspan(start));
        label.kind = std::abs(zbar + 1.0) < config.nb_z_tolerance ? PhaseKind::NB : PhaseKind::SBB;
        return label;
    }

    label.kind = PhaseKind::OtherNonDTC;
    return label;
}

}  // namespace dtcsim
