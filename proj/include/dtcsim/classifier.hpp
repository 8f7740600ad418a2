// classifier.hpp: turns an (original, perturbed) trajectory pair into a
// dynamical-phase label.
//
// Decision order:
//   1. diverged, or max |O| > ub_threshold                     -> UB
//   2. tail max |O| <= np_threshold, or no growth over the seed -> NP
//   3. undriven LMG away from NP, or a static non-zero tail     -> SB
//   4. decorrelator d2 (over the tail window) > d2_threshold   -> Chaotic
//   5. flat envelope and subharmonic order n = 2 / n > 2       -> DTC_2T / DTC_HO
//   6. LMG with an evenly spaced multi-peak spectrum           -> NB / SBB
//   7. anything else                                           -> OtherNonDTC
// O is J_x/N for the Dicke family and X for LMG. Trajectories are assumed to
// start from the small normal-phase seed: an orbit that never outgrows its
// early-time amplitude counts as NP even when undamped.

#pragma once

#include "dtcsim/dynamics.hpp"
#include "dtcsim/simulation.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtcsim {

enum class PhaseKind { NP, SB, UB, DTC_2T, DTC_HO, NB, SBB, Chaotic, OtherNonDTC };

std::string_view to_string(PhaseKind kind);
PhaseKind phase_kind_from_string(std::string_view name);
inline bool is_dtc(PhaseKind k) { return k == PhaseKind::DTC_2T || k == PhaseKind::DTC_HO; }

struct PhaseDiagnostics {
    double max_amp{0.0};
    double d2{0.0};
    double sigma_amp{0.0};
    int response_order_n{0};   // 0 when no subharmonic order was found
    double dominant_freq{0.0};
};

struct PhaseLabel {
    PhaseKind kind{PhaseKind::NP};
    PhaseDiagnostics diagnostics{};
    std::string note;  // set for in-cell errors and insufficient data

    // "DTC_HO(n=3)" style label text.
    std::string text() const;
};

struct ClassifierConfig {
    double np_threshold{1e-3};
    // Undamped seeds never decay; a tail no larger than this multiple of the
    // early-time maximum counts as the normal phase.
    double np_growth_factor{3.0};
    double head_fraction{0.001};
    double ub_threshold{1.0};
    double d2_threshold{1e-3};
    double sigma_amp_threshold{1e-2};
    double fft_window_periods{10.0};
    double perturbation_delta{1e-6};
    double envelope_window{0.5};
    double subharmonic_tolerance{0.05};
    double nb_z_tolerance{0.05};
    double peak_floor{0.05};

    void validate() const;
};

// Time-averaged decorrelator of two observable sets sampled identically.
double decorrelator(std::span<const std::vector<double>> original,
                    std::span<const std::vector<double>> perturbed);
double decorrelator(const Trajectory& original, const Trajectory& perturbed, ModelKind kind);

struct Envelope {
    std::vector<double> peaks;  // one max |x - mean| per half oscillation
    double sigma_amp{0.0};      // std / mean of peaks
    bool sufficient{false};     // at least four complete half oscillations
};

// Envelope over the trailing `config.envelope_window` fraction of the series.
Envelope amplitude_envelope(std::span<const double> series, const ClassifierConfig& config);

struct SpectralPeak {
    double freq{0.0};       // angular frequency
    double magnitude{0.0};  // relative to the largest peak
};

struct ResponseFrequency {
    std::optional<double> freq;  // angular; empty for a flat series
    std::optional<int> order;    // n with omega_d / freq ~ n
    double bin_width{0.0};       // 2 pi / window length
    std::vector<SpectralPeak> peaks;  // local maxima above config.peak_floor
};

// Analyses the last fft_window_periods drive periods of a uniformly sampled
// series (the whole trailing half when that window is unavailable or the
// drive is static).
ResponseFrequency dominant_response_frequency(std::span<const double> series,
                                              double sample_spacing, double omega_d,
                                              const ClassifierConfig& config);

// Steps 1-2 of the pipeline alone: the tail stays below np_threshold, or no
// larger than np_growth_factor times the early-time maximum.
bool normal_phase_series(std::span<const double> series, const ClassifierConfig& config);
// False for diverged or UB trajectories as well.
bool is_normal_phase(const Trajectory& traj, ModelKind kind, const ClassifierConfig& config = {});

PhaseLabel classify(const Trajectory& original, const Trajectory& perturbed, ModelKind kind,
                    const DriveSpec& drive, const ClassifierConfig& config = {});

}  // namespace dtcsim
