#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ks2d/torus.hpp"

namespace ks2d {

// Fourier coefficients of the velocity pair (u,v) on the resolved lattice.
// Both component arrays are stored in FFT index order.  Fields representing
// real data satisfy conjugate symmetry f(-k) = conj(f(k)); gradient-type
// fields additionally satisfy k~2*uhat = k~1*vhat for every mode.
struct SpectralField {
    TorusSpec spec;
    std::vector<Complex> uhat;
    std::vector<Complex> vhat;
    bool gradient_type = false;

    SpectralField() = default;
    explicit SpectralField(const TorusSpec& s, bool gradient = false)
        : spec(s), uhat(s.modes(), Complex{0.0, 0.0}), vhat(s.modes(), Complex{0.0, 0.0}),
          gradient_type(gradient) {}

    Complex& u(int k1, int k2) { return uhat[spec.flat_index(k1, k2)]; }
    Complex& v(int k1, int k2) { return vhat[spec.flat_index(k1, k2)]; }
    const Complex& u(int k1, int k2) const { return uhat[spec.flat_index(k1, k2)]; }
    const Complex& v(int k1, int k2) const { return vhat[spec.flat_index(k1, k2)]; }

    void set_zero() {
        std::fill(uhat.begin(), uhat.end(), Complex{0.0, 0.0});
        std::fill(vhat.begin(), vhat.end(), Complex{0.0, 0.0});
    }

    void scale(double c) {
        for (auto& z : uhat) z *= c;
        for (auto& z : vhat) z *= c;
    }

    // this += c * g
    void axpy(double c, const SpectralField& g) {
        for (std::size_t i = 0; i < uhat.size(); ++i) uhat[i] += c * g.uhat[i];
        for (std::size_t i = 0; i < vhat.size(); ++i) vhat[i] += c * g.vhat[i];
    }

    void remove_mean() {
        uhat[0] = Complex{0.0, 0.0};
        vhat[0] = Complex{0.0, 0.0};
    }
};

inline double max_coefficient_magnitude(const SpectralField& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.uhat.size(); ++i)
        m = std::max(m, std::abs(f.uhat[i]) + std::abs(f.vhat[i]));
    return m;
}

// max_k |f(-k) - conj(f(k))| over both components, relative to the largest
// coefficient magnitude.  Zero for exactly real data.
inline double reality_residual(const SpectralField& f) {
    const auto& s = f.spec;
    double worst = 0.0;
    for_each_mode(s, [&](std::size_t i, int k1, int k2) {
        // -k may fall off the lattice for Nyquist rows; it aliases back onto
        // itself there, which the flat_index wrap handles.
        int m1 = (k1 == s.N1 / 2) ? k1 : -k1;
        int m2 = (k2 == s.N2 / 2) ? k2 : -k2;
        std::size_t j = s.flat_index(m1, m2);
        worst = std::max(worst, std::abs(f.uhat[j] - std::conj(f.uhat[i])));
        worst = std::max(worst, std::abs(f.vhat[j] - std::conj(f.vhat[i])));
    });
    double scale = max_coefficient_magnitude(f);
    return scale > 0.0 ? worst / scale : worst;
}

// max_k |k~2*uhat - k~1*vhat| / max_k (|uhat|+|vhat|); zero iff curl-free.
inline double curl_residual(const SpectralField& f) {
    double worst = 0.0;
    for_each_mode(f.spec, [&](std::size_t i, int k1, int k2) {
        auto kt = f.spec.wavenumber(k1, k2);
        worst = std::max(worst, std::abs(kt[1] * f.uhat[i] - kt[0] * f.vhat[i]));
    });
    double scale = max_coefficient_magnitude(f);
    return scale > 0.0 ? worst / scale : worst;
}

// Projects onto conjugate-symmetric (real-data) fields:
// f(k) <- (f(k) + conj(f(-k)))/2.
inline void enforce_reality(SpectralField& f) {
    const auto& s = f.spec;
    auto symmetrize = [&](std::vector<Complex>& a) {
        for (int i1 = 0; i1 < s.N1; ++i1) {
            for (int i2 = 0; i2 < s.N2; ++i2) {
                int j1 = (s.N1 - i1) % s.N1;
                int j2 = (s.N2 - i2) % s.N2;
                std::size_t i = std::size_t(i1) * s.N2 + i2;
                std::size_t j = std::size_t(j1) * s.N2 + j2;
                if (j < i) continue;
                Complex avg = 0.5 * (a[i] + std::conj(a[j]));
                a[i] = avg;
                a[j] = std::conj(avg);
            }
        }
    };
    symmetrize(f.uhat);
    symmetrize(f.vhat);
}

}  // namespace ks2d
