#pragma once

#include <vector>

#include "ks2d/fft.hpp"
#include "ks2d/field.hpp"

namespace ks2d {

enum class DealiasMode { two_thirds, none };

inline bool dealias_keep(const TorusSpec& spec, int k1, int k2, DealiasMode mode) {
    if (mode == DealiasMode::none) return true;
    return std::abs(k1) <= spec.N1 / 3 && std::abs(k2) <= spec.N2 / 3;
}

inline void apply_dealias_mask(const TorusSpec& spec, std::vector<Complex>& a, DealiasMode mode) {
    if (mode == DealiasMode::none) return;
    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        if (!dealias_keep(spec, k1, k2, mode)) a[i] = Complex{0.0, 0.0};
    });
}

// Scratch buffers for the pseudo-spectral quadratic terms.
struct ProductWorkspace {
    std::vector<double> pu, pv, pw;
    std::vector<Complex> masked_u, masked_v, what;
};

// Spectral coefficients of (u^2 + v^2)/2, computed pseudo-spectrally with the
// chosen dealiasing on both the inputs and the product.
inline void half_speed_square(const SpectralField& f, DealiasMode mode, ProductWorkspace& ws,
                              std::vector<Complex>& out) {
    Fft2d& fft = fft_for(f.spec);
    ws.masked_u = f.uhat;
    ws.masked_v = f.vhat;
    apply_dealias_mask(f.spec, ws.masked_u, mode);
    apply_dealias_mask(f.spec, ws.masked_v, mode);
    fft.synthesize(ws.masked_u, ws.pu);
    fft.synthesize(ws.masked_v, ws.pv);
    ws.pw.resize(ws.pu.size());
    for (std::size_t i = 0; i < ws.pu.size(); ++i)
        ws.pw[i] = 0.5 * (ws.pu[i] * ws.pu[i] + ws.pv[i] * ws.pv[i]);
    fft.analyze(ws.pw, out);
    apply_dealias_mask(f.spec, out, mode);
}

// 2DKS nonlinearity -grad(u^2+v^2)/2 in spectral form.  The output is an
// exact gradient (hence curl-free) and its zero mode vanishes identically
// because the symbol factor is zero there.
inline SpectralField nonlinearity(const SpectralField& f,
                                  DealiasMode mode = DealiasMode::two_thirds) {
    thread_local ProductWorkspace ws;
    SpectralField out(f.spec, /*gradient=*/true);
    half_speed_square(f, mode, ws, ws.what);
    for_each_mode(f.spec, [&](std::size_t i, int k1, int k2) {
        auto kt = f.spec.wavenumber(k1, k2);
        const Complex w = ws.what[i];
        out.uhat[i] = Complex{0.0, -kt[0]} * w;
        out.vhat[i] = Complex{0.0, -kt[1]} * w;
    });
    return out;
}

}  // namespace ks2d
