#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "ks2d/field.hpp"
#include "ks2d/norms.hpp"

namespace ks2d {

enum class DataKind { zero, single_mode, random_envelope, file };
enum class TargetNorm { none, wiener0, l2 };

struct InitialDataConfig {
    DataKind kind = DataKind::zero;
    double amplitude = 0.0;
    double spectral_exponent = 2.0;  // p in the |k~|^{-p} envelope
    std::uint64_t seed = 0;
    bool zero_mean = true;
    bool gradient = true;
    std::array<int, 2> mode{1, 0};
    std::string path;  // spectra file for kind == file (resolved by the harness)
    TargetNorm target = TargetNorm::none;
    double target_value = 0.0;
};

// Gradient-type data is built from a scalar potential, u = grad(phi) with
// phihat(k) = amplitude * |k~|^{-p} * e^{i theta(k)} on a conjugate-symmetric
// half lattice, so the curl-free relation holds exactly.  Fields are
// bit-reproducible for a fixed seed: phases come from a mt19937_64 stream
// consumed in a fixed lattice order.
inline SpectralField make_initial_data(const TorusSpec& spec, const InitialDataConfig& cfg) {
    SpectralField f(spec, cfg.gradient);

    auto assign_pair = [&](int k1, int k2, Complex phase_u, Complex phase_v, double envelope) {
        auto kt = spec.wavenumber(k1, k2);
        if (cfg.gradient) {
            const Complex phi = envelope * phase_u;
            f.u(k1, k2) = Complex{0.0, kt[0]} * phi;
            f.v(k1, k2) = Complex{0.0, kt[1]} * phi;
            f.u(-k1, -k2) = std::conj(f.u(k1, k2));
            f.v(-k1, -k2) = std::conj(f.v(k1, k2));
        } else {
            f.u(k1, k2) = envelope * phase_u;
            f.v(k1, k2) = envelope * phase_v;
            f.u(-k1, -k2) = std::conj(f.u(k1, k2));
            f.v(-k1, -k2) = std::conj(f.v(k1, k2));
        }
    };

    switch (cfg.kind) {
        case DataKind::zero:
            break;
        case DataKind::single_mode: {
            const int k1 = cfg.mode[0], k2 = cfg.mode[1];
            if ((k1 == 0 && k2 == 0) || !spec.resolved(k1, k2) ||
                std::abs(k1) >= spec.N1 / 2 || std::abs(k2) >= spec.N2 / 2)
                throw std::invalid_argument("make_initial_data: unusable single mode index");
            assign_pair(k1, k2, Complex{0.5 * cfg.amplitude, 0.0},
                        Complex{0.5 * cfg.amplitude, 0.0}, 1.0);
            break;
        }
        case DataKind::random_envelope: {
            std::mt19937_64 rng(cfg.seed);
            auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
            // canonical half lattice, Nyquist rows excluded, fixed order
            for (int k1 = 0; k1 < spec.N1 / 2; ++k1) {
                for (int k2 = -(spec.N2 / 2 - 1); k2 < spec.N2 / 2; ++k2) {
                    if (k1 == 0 && k2 <= 0) continue;
                    auto kt = spec.wavenumber(k1, k2);
                    const double mag = std::hypot(kt[0], kt[1]);
                    const double envelope =
                        cfg.amplitude * std::pow(mag, -cfg.spectral_exponent);
                    const Complex pu = std::polar(1.0, two_pi * unit());
                    const Complex pv = std::polar(1.0, two_pi * unit());
                    assign_pair(k1, k2, pu, pv, envelope);
                }
            }
            break;
        }
        case DataKind::file:
            throw std::invalid_argument("make_initial_data: file data is loaded by the harness");
    }

    if (cfg.zero_mean) f.remove_mean();

    if (cfg.target != TargetNorm::none) {
        const double current =
            cfg.target == TargetNorm::wiener0 ? wiener_norm(f, 0.0) : l2_norm(f);
        if (current > 0.0) f.scale(cfg.target_value / current);
    }
    return f;
}

}  // namespace ks2d
