// dynamics.hpp: drive evaluation, fixed-step RK4, and trajectory recording.
//
// Everything here is model agnostic. A right-hand side is any callable
//     void rhs(double t, const State<N>& x, State<N>& dxdt)
// and states are fixed-size arrays so that the hot loop never allocates.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtcsim {

template <std::size_t N>
using State = std::array<double, N>;

// Periodically modulated parameter: base * (1 + amplitude * sin(frequency * t)).
struct DriveSpec {
    double base{0.0};
    double amplitude{0.0};
    double frequency{0.0};

    // Amplitudes above one are allowed but fall outside every swept regime.
    bool amplitude_flagged() const noexcept { return amplitude > 1.0; }
    void validate() const;
};

inline double drive_value(const DriveSpec& spec, double t) noexcept {
    return spec.base * (1.0 + spec.amplitude * std::sin(spec.frequency * t));
}

struct IntegratorConfig {
    double dt{1e-3};
    double t_final{1000.0};
    std::int64_t stride{10};
    double divergence_cutoff{1e6};

    void validate() const;
    // Number of RK4 steps covering [0, t_final].
    std::int64_t step_count() const;
    // floor(t_final / (dt * stride)) + 1
    std::size_t sample_count() const;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised by rk4_step when a stage evaluation produces a non-finite value.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::size_t component, double t)
        : std::runtime_error("non-finite derivative in component " + std::to_string(component) +
                             " at t=" + std::to_string(t)),
          component_(component), time_(t) {}
    std::size_t component() const noexcept { return component_; }
    double time() const noexcept { return time_; }

private:
    std::size_t component_;
    double time_;
};

// Uniformly sampled time series of flat state vectors.
struct Trajectory {
    double t0{0.0};
    double dt{0.0};
    std::int64_t stride{1};
    std::size_t dim{0};
    std::string model_id;
    std::vector<std::string> components;
    std::vector<double> samples;  // row-major, dim values per sample
    bool diverged{false};
    // Number of samples kept before truncation; equals size() when not diverged.
    std::size_t truncation_index{0};

    std::size_t size() const noexcept { return dim == 0 ? 0 : samples.size() / dim; }
    double sample_spacing() const noexcept { return dt * static_cast<double>(stride); }
    // Computed from the sample index, never accumulated.
    double time(std::size_t k) const noexcept {
        return t0 + static_cast<double>(static_cast<std::int64_t>(k) * stride) * dt;
    }
    std::span<const double> row(std::size_t k) const {
        return {samples.data() + k * dim, dim};
    }
    double at(std::size_t k, std::size_t c) const { return samples[k * dim + c]; }
    std::vector<double> column(std::size_t c) const;
};

namespace detail {
template <std::size_t N>
inline void check_finite(const State<N>& k, double t) {
    for (std::size_t i = 0; i < N; ++i) {
        if (!std::isfinite(k[i])) throw DivergenceError(i, t);
    }
}
}  // namespace detail

// Classical fourth-order Runge-Kutta step.
template <std::size_t N, typename Rhs>
State<N> rk4_step(Rhs&& rhs, const State<N>& x, double t, double dt) {
    State<N> k1, k2, k3, k4, tmp;
    const double h2 = 0.5 * dt;

    rhs(t, x, k1);
    detail::check_finite<N>(k1, t);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + h2 * k1[i];
    rhs(t + h2, tmp, k2);
    detail::check_finite<N>(k2, t + h2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + h2 * k2[i];
    rhs(t + h2, tmp, k3);
    detail::check_finite<N>(k3, t + h2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + dt * k3[i];
    rhs(t + dt, tmp, k4);
    detail::check_finite<N>(k4, t + dt);

    State<N> out;
    const double h6 = dt / 6.0;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = x[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

// Integrates from t = 0 and records every stride-th state. A state component
// above divergence_cutoff (or a non-finite stage) stops the run and flags the
// trajectory as diverged; samples recorded so far are kept.
template <std::size_t N, typename Rhs>
Trajectory integrate(Rhs&& rhs, const State<N>& state0, const IntegratorConfig& config) {
    config.validate();
    for (double v : state0) {
        if (!std::isfinite(v)) throw ConfigError("initial state is not finite");
    }

    Trajectory traj;
    traj.t0 = 0.0;
    traj.dt = config.dt;
    traj.stride = config.stride;
    traj.dim = N;
    const std::size_t n_samples = config.sample_count();
    traj.samples.reserve(n_samples * N);
    traj.samples.insert(traj.samples.end(), state0.begin(), state0.end());

    const std::int64_t n_steps = static_cast<std::int64_t>(n_samples - 1) * config.stride;
    State<N> x = state0;
    for (std::int64_t step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * config.dt;
        bool blown = false;
        try {
            x = rk4_step<N>(rhs, x, t, config.dt);
        } catch (const DivergenceError&) {
            blown = true;
        }
        if (!blown) {
            for (double v : x) {
                if (!(std::abs(v) <= config.divergence_cutoff)) {
                    blown = true;
                    break;
                }
            }
        }
        if (blown) {
            traj.diverged = true;
            break;
        }
        if ((step + 1) % config.stride == 0) {
            traj.samples.insert(traj.samples.end(), x.begin(), x.end());
        }
    }
    traj.truncation_index = traj.size();
    return traj;
}

}  // namespace dtcsim
