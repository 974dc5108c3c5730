#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ks2d/field.hpp"

namespace ks2d {

// Time grid plus stored fields.  times[0] == 0 and, when produced by the
// stepper or the fixed-point solvers, the spacing is uniform.
struct Trajectory {
    TorusSpec spec;
    std::vector<double> times;
    std::vector<SpectralField> fields;

    Trajectory() = default;
    explicit Trajectory(const TorusSpec& s) : spec(s) {}

    std::size_t size() const { return times.size(); }

    void append(double t, SpectralField f) {
        if (!times.empty() && t <= times.back())
            throw std::invalid_argument("Trajectory: times must be strictly increasing");
        if (times.empty() && t != 0.0)
            throw std::invalid_argument("Trajectory: must start at t = 0");
        times.push_back(t);
        fields.push_back(std::move(f));
    }
};

inline bool uniform_grid(const std::vector<double>& times, double rel_tol = 1e-12) {
    if (times.size() < 2) return true;
    const double dt = times[1] - times[0];
    for (std::size_t n = 1; n + 1 < times.size(); ++n)
        if (std::abs(times[n + 1] - times[n] - dt) > rel_tol * std::max(1.0, std::abs(dt)))
            return false;
    return true;
}

// Single scalar coefficient array per time; used for the quantities the
// integral operators act on (e.g. u^2 + v^2).
struct ScalarTrajectory {
    TorusSpec spec;
    std::vector<double> times;
    std::vector<std::vector<Complex>> values;

    ScalarTrajectory() = default;
    explicit ScalarTrajectory(const TorusSpec& s) : spec(s) {}

    std::size_t size() const { return times.size(); }
};

}  // namespace ks2d
