#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ks2d/torus.hpp"
#include "ks2d/field.hpp"
#include "ks2d/trajectory.hpp"

namespace ks2d {

/*
 * Norm conventions.
 *
 * Exponentially weighted l1 norms over Fourier coefficients use the integer
 * index norm |k| (Euclidean unless configured otherwise):
 *
 *   |f|_rho          = sum_k e^{rho |k|} (|uhat(k)| + |vhat(k)|)
 *   ||f||_{alpha(,T)} = sum_k sup_{t} e^{alpha t |k|} (|uhat(k,t)| + |vhat(k,t)|)
 *
 * Sobolev norms use the physical wavenumber and Plancherel's identity with
 * the convention ||f||_{L2}^2 = sum_k |fhat(k)|^2:
 *
 *   ||f||_{H^s}^2    = sum_k (1 + |k~|^2)^s (|uhat|^2 + |vhat|^2)
 *   ||f||_{Hdot^s}^2 = sum_{k != 0} |k~|^{2s} (|uhat|^2 + |vhat|^2)
 *
 * Pair fields always sum both components, giving product-space norms.
 */

inline double wiener_norm_component(const TorusSpec& spec, const std::vector<Complex>& a,
                                    double rho, IndexNorm kind = IndexNorm::euclidean) {
    double sum = 0.0;
    if (rho == 0.0) {
        for (const auto& z : a) sum += std::abs(z);
        return sum;
    }
    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        sum += std::exp(rho * index_norm(k1, k2, kind)) * std::abs(a[i]);
    });
    return sum;
}

inline double wiener_norm(const SpectralField& f, double rho,
                          IndexNorm kind = IndexNorm::euclidean) {
    return wiener_norm_component(f.spec, f.uhat, rho, kind) +
           wiener_norm_component(f.spec, f.vhat, rho, kind);
}

inline double l2_norm(const SpectralField& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < f.uhat.size(); ++i)
        sum += std::norm(f.uhat[i]) + std::norm(f.vhat[i]);
    return std::sqrt(sum);
}

inline double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
    double sum = 0.0;
    for_each_mode(f.spec, [&](std::size_t i, int k1, int k2) {
        const double mass = std::norm(f.uhat[i]) + std::norm(f.vhat[i]);
        auto kt = f.spec.wavenumber(k1, k2);
        const double kk = kt[0] * kt[0] + kt[1] * kt[1];
        if (homogeneous) {
            if (k1 == 0 && k2 == 0) return;
            sum += std::pow(kk, s) * mass;
        } else {
            sum += std::pow(1.0 + kk, s) * mass;
        }
    });
    return std::sqrt(sum);
}

inline double h1dot_norm(const SpectralField& f) { return sobolev_norm(f, 1.0, true); }

// sum_k sup over stored times (<= horizon when given) of the weighted
// coefficient magnitudes.  With alpha = 0 this is the summand-wise sup-in-t
// of the plain Wiener norm terms.
inline double spacetime_alpha_norm(const Trajectory& traj, double alpha,
                                   std::optional<double> horizon = std::nullopt,
                                   IndexNorm kind = IndexNorm::euclidean) {
    if (traj.size() == 0) return 0.0;
    if (!uniform_grid(traj.times))
        throw std::invalid_argument("spacetime_alpha_norm: non-uniform time grid");
    const auto& spec = traj.spec;
    std::vector<double> per_mode(spec.modes(), 0.0);
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const double t = traj.times[n];
        if (horizon && t > *horizon + 1e-15) break;
        const auto& f = traj.fields[n];
        for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
            const double w = std::exp(alpha * t * index_norm(k1, k2, kind));
            const double val = w * (std::abs(f.uhat[i]) + std::abs(f.vhat[i]));
            if (val > per_mode[i]) per_mode[i] = val;
        });
    }
    double sum = 0.0;
    for (double v : per_mode) sum += v;
    return sum;
}

// Norm time series backing the CSV output (t,l2,h1dot,wiener0,rho_est).
struct NormSeries {
    std::vector<double> times;
    std::vector<double> l2;
    std::vector<double> h1dot;
    std::vector<double> wiener0;
    std::vector<double> rho_est;  // NaN where the radius fit is unavailable

    std::size_t size() const { return times.size(); }
};

}  // namespace ks2d
