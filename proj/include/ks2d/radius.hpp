#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ks2d/field.hpp"

namespace ks2d {

// Least-squares fit of the exponential decay rate of the spectrum: shells of
// width min(2*pi/L1, 2*pi/L2) in |k~| are scanned for their peak coefficient
// magnitude; the slope of log(peak) against the shell center, over shells
// above a relative noise floor of 1e-14 x (global peak), estimates the decay
// rate, i.e. the analyticity radius in physical units.
struct RadiusFit {
    double rho_est = 0.0;
    double r_squared = 0.0;
    int shells_used = 0;
};

inline std::optional<RadiusFit> try_analyticity_radius_estimate(const SpectralField& f) {
    const TorusSpec& spec = f.spec;
    const double width = std::min(two_pi / spec.L1, two_pi / spec.L2);

    double peak = 0.0;
    std::vector<double> shell_max;
    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        if (k1 == 0 && k2 == 0) return;
        auto kt = spec.wavenumber(k1, k2);
        const double mag = std::abs(f.uhat[i]) + std::abs(f.vhat[i]);
        const std::size_t s = std::size_t(std::hypot(kt[0], kt[1]) / width);
        if (s >= shell_max.size()) shell_max.resize(s + 1, 0.0);
        if (mag > shell_max[s]) shell_max[s] = mag;
        if (mag > peak) peak = mag;
    });

    const double floor = 1e-14 * peak;
    std::vector<double> xs, ys;
    for (std::size_t s = 0; s < shell_max.size(); ++s) {
        if (shell_max[s] > floor && shell_max[s] > 0.0) {
            xs.push_back((double(s) + 0.5) * width);
            ys.push_back(std::log(shell_max[s]));
        }
    }
    if (xs.size() < 6) return std::nullopt;

    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    RadiusFit fit;
    const double slope = sxy / sxx;
    fit.rho_est = -slope;
    fit.shells_used = int(n);
    fit.r_squared = syy > 1e-30 ? (sxy * sxy) / (sxx * syy) : 0.0;
    return fit;
}

inline RadiusFit analyticity_radius_estimate(const SpectralField& f) {
    auto fit = try_analyticity_radius_estimate(f);
    if (!fit) throw std::runtime_error("analyticity_radius_estimate: insufficient decay range");
    return *fit;
}

}  // namespace ks2d
