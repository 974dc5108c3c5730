#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ks2d/torus.hpp"

namespace ks2d {

/*
 * Linear symbol of the biharmonic-plus-Laplacian operator on the torus.
 *
 *   sigma(k~) = |k~|^4 - |k~|^2,   k~ = 2*pi*(k1/L1, k2/L2)
 *
 * Writing kappa = |k~|^2, sigma = kappa^2 - kappa, so sigma >= -1/4 with the
 * minimum on kappa = 1/2, and sigma < 0 exactly on the annulus 0 < |k~| < 1
 * (the linearly growing modes).  The spectral gap
 *
 *   A = min_{k != 0} sigma(k~) / |k|
 *
 * uses the norm of the INTEGER index k (Euclidean by default); A > 0 exactly
 * when no nonzero mode has sigma <= 0.  The physical |k~| enters only through
 * sigma itself and through Sobolev weights elsewhere.
 */
inline double sigma_eval(const std::array<double, 2>& ktilde) {
    const double kappa = ktilde[0] * ktilde[0] + ktilde[1] * ktilde[1];
    return kappa * kappa - kappa;
}

inline double sigma_at(const TorusSpec& spec, int k1, int k2) {
    return sigma_eval(spec.wavenumber(k1, k2));
}

struct SymbolTable {
    TorusSpec spec;
    IndexNorm norm_kind = IndexNorm::euclidean;
    std::vector<double> sigma;                 // FFT index order
    std::vector<std::array<int, 2>> growing;   // sigma < 0, ordered by |k~|
    std::array<int, 2> k0{0, 0};               // |k~|^2 closest to 1/2
    double min_sigma = 0.0;
    double A = 0.0;
    bool has_gap = false;

    double sigma_of(int k1, int k2) const { return sigma[spec.flat_index(k1, k2)]; }
};

// The minimizer of sigma(k)/|k| must sit well inside the resolved lattice
// (sigma/|k| grows like |k|^3); if it lands at |k| >= N/4 the grid is too
// coarse to trust the gap constant.
inline SymbolTable build_symbol_table(const TorusSpec& spec,
                                      IndexNorm norm_kind = IndexNorm::euclidean) {
    SymbolTable t;
    t.spec = spec;
    t.norm_kind = norm_kind;
    t.sigma.resize(spec.modes());

    double min_ratio = std::numeric_limits<double>::infinity();
    double min_sigma_nonzero = std::numeric_limits<double>::infinity();
    std::array<int, 2> ratio_argmin{0, 0};

    double best_k0_dist = std::numeric_limits<double>::infinity();
    double best_k0_mag = std::numeric_limits<double>::infinity();

    t.min_sigma = std::numeric_limits<double>::infinity();

    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        const auto kt = spec.wavenumber(k1, k2);
        const double s = sigma_eval(kt);
        t.sigma[i] = s;
        t.min_sigma = std::min(t.min_sigma, s);
        if (k1 == 0 && k2 == 0) return;

        if (s < 0.0) t.growing.push_back({k1, k2});

        const double ratio = s / index_norm(k1, k2, norm_kind);
        if (ratio < min_ratio) {
            min_ratio = ratio;
            ratio_argmin = {k1, k2};
        }
        min_sigma_nonzero = std::min(min_sigma_nonzero, s);

        // k0: |k~|^2 closest to 1/2; ties -> smaller |k~|, then lexicographic
        const double kappa = kt[0] * kt[0] + kt[1] * kt[1];
        const double dist = std::abs(kappa - 0.5);
        const std::array<int, 2> cand{k1, k2};
        bool better = false;
        if (dist < best_k0_dist - 1e-15) {
            better = true;
        } else if (dist <= best_k0_dist + 1e-15) {
            if (kappa < best_k0_mag - 1e-15) {
                better = true;
            } else if (kappa <= best_k0_mag + 1e-15 && cand < t.k0) {
                better = true;
            }
        }
        if (better) {
            best_k0_dist = dist;
            best_k0_mag = kappa;
            t.k0 = cand;
        }
    });

    std::sort(t.growing.begin(), t.growing.end(),
              [&](const std::array<int, 2>& a, const std::array<int, 2>& b) {
                  auto ka = spec.wavenumber(a[0], a[1]);
                  auto kb = spec.wavenumber(b[0], b[1]);
                  double ma = std::hypot(ka[0], ka[1]);
                  double mb = std::hypot(kb[0], kb[1]);
                  if (ma != mb) return ma < mb;
                  return a < b;
              });

    t.A = min_ratio;
    t.has_gap = t.growing.empty() && min_sigma_nonzero > 0.0;
    if (!t.has_gap && t.A > 0.0) t.A = 0.0;  // neutral circle touched: no gap

    const int nquarter = std::min(spec.N1, spec.N2) / 4;
    if (std::max(std::abs(ratio_argmin[0]), std::abs(ratio_argmin[1])) >= nquarter)
        throw std::runtime_error(
            "build_symbol_table: gap minimizer at |k| >= N/4; grid too coarse");

    return t;
}

inline std::size_t count_growing_modes(const TorusSpec& spec) {
    return build_symbol_table(spec).growing.size();
}

// CSV dump: k1,k2,ktilde1,ktilde2,sigma
inline void write_symbol_csv(const SymbolTable& t, std::ostream& os) {
    os << "k1,k2,ktilde1,ktilde2,sigma\n";
    char line[160];
    for_each_mode(t.spec, [&](std::size_t i, int k1, int k2) {
        auto kt = t.spec.wavenumber(k1, k2);
        std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g,%.17g\n", k1, k2, kt[0], kt[1],
                      t.sigma[i]);
        os << line;
    });
}

}  // namespace ks2d
