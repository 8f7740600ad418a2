#include "dtcsim/dynamics.hpp"

#include <cmath>

namespace dtcsim {

void DriveSpec::validate() const {
    if (!std::isfinite(base) || !std::isfinite(amplitude) || !std::isfinite(frequency)) {
        throw ConfigError("drive: non-finite field");
    }
    if (amplitude < 0.0) throw ConfigError("drive: amplitude must be >= 0");
    if (frequency < 0.0) throw ConfigError("drive: frequency must be >= 0");
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("integrator: dt must be > 0");
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw ConfigError("integrator: t_final must be > 0");
    }
    if (stride < 1) throw ConfigError("integrator: stride must be a positive integer");
    if (!(divergence_cutoff > 1.0)) throw ConfigError("integrator: divergence_cutoff must be > 1");
    if (t_final < dt) throw ConfigError("integrator: t_final shorter than one step");
}

std::int64_t IntegratorConfig::step_count() const {
    // The small slack keeps t_final = 10 * dt from rounding down to 9 steps.
    return static_cast<std::int64_t>(std::floor(t_final / dt + 1e-9));
}

std::size_t IntegratorConfig::sample_count() const {
    return static_cast<std::size_t>(step_count() / stride) + 1;
}

std::vector<double> Trajectory::column(std::size_t c) const {
    std::vector<double> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) out.push_back(samples[k * dim + c]);
    return out;
}

}  // namespace dtcsim
