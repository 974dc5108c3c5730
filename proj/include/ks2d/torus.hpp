#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ks2d {

using Complex = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Norm used for integer lattice indices in exponential weights and in the
// spectral gap.  Euclidean is the default; l1 is kept as a knob since the
// two choices lead to different gap constants.
enum class IndexNorm { euclidean, l1 };

inline double index_norm(int k1, int k2, IndexNorm kind = IndexNorm::euclidean) {
    if (kind == IndexNorm::l1) return std::abs(k1) + std::abs(k2);
    return std::sqrt(double(k1) * k1 + double(k2) * k2);
}

// Rectangular torus [0,L1] x [0,L2] sampled on an N1 x N2 Fourier lattice.
// The resolved lattice is { k in Z^2 : -N/2 < k_i <= N/2 }, stored in FFT
// index order (index i maps to k = i for i <= N/2, k = i - N above).
struct TorusSpec {
    double L1 = two_pi;
    double L2 = two_pi;
    int N1 = 0;
    int N2 = 0;

    TorusSpec() = default;
    TorusSpec(double l1, double l2, int n1, int n2) : L1(l1), L2(l2), N1(n1), N2(n2) {
        if (!(L1 > 0.0) || !(L2 > 0.0))
            throw std::invalid_argument("TorusSpec: periods must be positive");
        if (N1 < 4 || N2 < 4 || N1 % 2 != 0 || N2 % 2 != 0)
            throw std::invalid_argument("TorusSpec: grid sizes must be even and >= 4");
    }

    std::size_t modes() const { return std::size_t(N1) * std::size_t(N2); }

    int k1_at(int i1) const { return i1 <= N1 / 2 ? i1 : i1 - N1; }
    int k2_at(int i2) const { return i2 <= N2 / 2 ? i2 : i2 - N2; }

    int index1_of(int k1) const { return k1 >= 0 ? k1 : k1 + N1; }
    int index2_of(int k2) const { return k2 >= 0 ? k2 : k2 + N2; }

    std::size_t flat_index(int k1, int k2) const {
        return std::size_t(index1_of(k1)) * N2 + index2_of(k2);
    }

    bool resolved(int k1, int k2) const {
        return k1 > -N1 / 2 && k1 <= N1 / 2 && k2 > -N2 / 2 && k2 <= N2 / 2;
    }

    // physical wavenumber k~ = 2*pi*(k1/L1, k2/L2)
    std::array<double, 2> wavenumber(int k1, int k2) const {
        return {two_pi * k1 / L1, two_pi * k2 / L2};
    }

    bool same_grid(const TorusSpec& o) const {
        return N1 == o.N1 && N2 == o.N2 && L1 == o.L1 && L2 == o.L2;
    }
};

// Convenience loop: calls fn(flat, k1, k2) over the resolved lattice in FFT
// storage order.  All reductions in the library iterate in this fixed order
// so results do not depend on any partitioning.
template <typename Fn>
inline void for_each_mode(const TorusSpec& spec, Fn&& fn) {
    for (int i1 = 0; i1 < spec.N1; ++i1) {
        const int k1 = spec.k1_at(i1);
        for (int i2 = 0; i2 < spec.N2; ++i2) {
            const int k2 = spec.k2_at(i2);
            fn(std::size_t(i1) * spec.N2 + i2, k1, k2);
        }
    }
}

// Full lattice -> physical wavenumber map, in FFT storage order.
inline std::vector<std::array<double, 2>> wavenumbers(const TorusSpec& spec) {
    std::vector<std::array<double, 2>> out(spec.modes());
    for_each_mode(spec, [&](std::size_t i, int k1, int k2) { out[i] = spec.wavenumber(k1, k2); });
    return out;
}

}  // namespace ks2d
