#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ks2d/nonlinearity.hpp"
#include "ks2d/norms.hpp"
#include "ks2d/semigroup.hpp"

namespace ks2d {

/*
 * Coupled hierarchy for the analytic extension evaluated along the shifted
 * imaginary slice y = alpha_vec * t.  Writing (U,V) for the real and
 * imaginary parts of the extension of the pair field, level n solves the
 * linear system
 *
 *   dU/dt + L U = -alpha.grad V + grad(|U'|^2 + |V'|^2)/2
 *   dV/dt + L V = +alpha.grad U - grad(U'.V')
 *
 * with U(0) = u0, V(0) = 0, where primes denote level n-1 data (level 0 is
 * identically zero).  The stiff symbol is handled by the integrating-factor
 * RK4 of the real stepper; the first-order alpha.grad coupling and the
 * level-(n-1) source are evaluated explicitly inside the RK4 stages, the
 * source by linear interpolation between grid values.
 */
struct ComplexPair {
    SpectralField U;
    SpectralField V;
};

struct ComplexShiftLevel {
    std::vector<double> times;
    std::vector<ComplexPair> states;  // thinned by store_every
    double sup_norm = 0.0;            // sup_t ( ||U||_L2 + ||V||_L2 ) on the full grid
};

struct ComplexShiftResult {
    std::array<double, 2> alpha_vec{0.0, 0.0};
    std::vector<ComplexShiftLevel> levels;
    std::vector<double> sup_norms;  // one entry per level, in order
    std::optional<int> blowup_level;
    std::optional<double> blowup_time;

    bool blew_up() const { return blowup_level.has_value(); }
};

struct ComplexShiftOptions {
    double dt = 1e-3;
    DealiasMode dealias = DealiasMode::two_thirds;
    int store_every = 20;
};

namespace detail {

struct PairSource {
    SpectralField SU;
    SpectralField SV;
};

// Source terms from the previous level: grad(|U|^2+|V|^2)/2 and -grad(U.V).
inline void level_source(const ComplexPair& prev, DealiasMode mode, ProductWorkspace& ws,
                         PairSource& out) {
    const TorusSpec& spec = prev.U.spec;
    Fft2d& fft = fft_for(spec);

    auto synth = [&](const std::vector<Complex>& a, std::vector<double>& p) {
        ws.masked_u = a;
        apply_dealias_mask(spec, ws.masked_u, mode);
        fft.synthesize(ws.masked_u, p);
    };

    thread_local std::vector<double> pu1, pu2, pv1, pv2, prod;
    synth(prev.U.uhat, pu1);
    synth(prev.U.vhat, pu2);
    synth(prev.V.uhat, pv1);
    synth(prev.V.vhat, pv2);

    const std::size_t n = pu1.size();
    prod.resize(n);

    thread_local std::vector<Complex> w_sum, w_dot;
    for (std::size_t i = 0; i < n; ++i)
        prod[i] = 0.5 * (pu1[i] * pu1[i] + pu2[i] * pu2[i] + pv1[i] * pv1[i] + pv2[i] * pv2[i]);
    fft.analyze(prod, w_sum);
    apply_dealias_mask(spec, w_sum, mode);

    for (std::size_t i = 0; i < n; ++i) prod[i] = pu1[i] * pv1[i] + pu2[i] * pv2[i];
    fft.analyze(prod, w_dot);
    apply_dealias_mask(spec, w_dot, mode);

    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        auto kt = spec.wavenumber(k1, k2);
        out.SU.uhat[i] = Complex{0.0, kt[0]} * w_sum[i];
        out.SU.vhat[i] = Complex{0.0, kt[1]} * w_sum[i];
        out.SV.uhat[i] = Complex{0.0, -kt[0]} * w_dot[i];
        out.SV.vhat[i] = Complex{0.0, -kt[1]} * w_dot[i];
    });
}

}  // namespace detail

inline ComplexShiftResult complex_shift_solve(const SpectralField& u0,
                                              std::array<double, 2> alpha_vec, double T,
                                              int n_levels,
                                              const ComplexShiftOptions& opts = {}) {
    const TorusSpec& spec = u0.spec;
    if (std::abs(u0.uhat[0]) > 0.0 || std::abs(u0.vhat[0]) > 0.0)
        throw std::invalid_argument("complex_shift_solve: initial data must have zero mean");
    if (!(T > 0.0) || !(opts.dt > 0.0) || opts.dt > T)
        throw std::invalid_argument("complex_shift_solve: need 0 < dt <= T");
    if (n_levels < 1) throw std::invalid_argument("complex_shift_solve: need n_levels >= 1");

    const std::size_t steps = std::size_t(std::llround(T / opts.dt));
    const double dt = opts.dt;

    ComplexShiftResult result;
    result.alpha_vec = alpha_vec;

    std::vector<double> e_half(spec.modes()), e_full(spec.modes());
    std::vector<double> coupling(spec.modes());  // alpha . k~ per mode
    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        const double s = sigma_at(spec, k1, k2);
        e_half[i] = std::exp(-0.5 * dt * s);
        e_full[i] = std::exp(-dt * s);
        auto kt = spec.wavenumber(k1, k2);
        coupling[i] = alpha_vec[0] * kt[0] + alpha_vec[1] * kt[1];
    });

    auto mul_pair = [&](const std::vector<double>& e, ComplexPair& p) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            p.U.uhat[i] *= e[i];
            p.U.vhat[i] *= e[i];
            p.V.uhat[i] *= e[i];
            p.V.vhat[i] *= e[i];
        }
    };
    auto axpy_pair = [&](ComplexPair& y, double c, const ComplexPair& x) {
        y.U.axpy(c, x.U);
        y.V.axpy(c, x.V);
    };

    // stage function: coupling at the current level plus interpolated source
    auto stage = [&](const ComplexPair& p, const detail::PairSource& s0,
                     const detail::PairSource& s1, double theta, ComplexPair& out) {
        const double c0 = 1.0 - theta, c1 = theta;
        for (std::size_t i = 0; i < coupling.size(); ++i) {
            const Complex rot{0.0, coupling[i]};
            out.U.uhat[i] = -rot * p.V.uhat[i] + c0 * s0.SU.uhat[i] + c1 * s1.SU.uhat[i];
            out.U.vhat[i] = -rot * p.V.vhat[i] + c0 * s0.SU.vhat[i] + c1 * s1.SU.vhat[i];
            out.V.uhat[i] = rot * p.U.uhat[i] + c0 * s0.SV.uhat[i] + c1 * s1.SV.uhat[i];
            out.V.vhat[i] = rot * p.U.vhat[i] + c0 * s0.SV.vhat[i] + c1 * s1.SV.vhat[i];
        }
    };

    auto make_pair = [&]() {
        return ComplexPair{SpectralField(spec, u0.gradient_type), SpectralField(spec)};
    };

    // full-resolution state history of the previous / current level
    std::vector<ComplexPair> prev_states, cur_states;
    prev_states.assign(steps + 1, make_pair());  // level 0: identically zero
    cur_states.assign(steps + 1, make_pair());

    thread_local ProductWorkspace ws;
    detail::PairSource s_lo{SpectralField(spec), SpectralField(spec)};
    detail::PairSource s_hi{SpectralField(spec), SpectralField(spec)};
    ComplexPair b = make_pair(), c = make_pair(), d = make_pair();
    ComplexPair k1 = make_pair(), k2 = make_pair(), k3 = make_pair(), k4 = make_pair();
    ComplexPair incr = make_pair(), mid = make_pair();

    for (int level = 1; level <= n_levels; ++level) {
        ComplexPair a = make_pair();
        a.U = u0;  // V(0) = 0 at every level
        cur_states[0] = a;

        const bool source_zero = (level == 1);  // level 0 is identically zero
        if (!source_zero) detail::level_source(prev_states[0], opts.dealias, ws, s_lo);

        double sup = l2_norm(a.U) + l2_norm(a.V);
        double prev_norm = sup;
        bool blew = false;
        std::size_t valid_upto = 0;

        for (std::size_t n = 0; n < steps; ++n) {
            if (!source_zero) detail::level_source(prev_states[n + 1], opts.dealias, ws, s_hi);

            stage(a, s_lo, s_hi, 0.0, k1);

            b = a;
            axpy_pair(b, 0.5 * dt, k1);
            mul_pair(e_half, b);
            stage(b, s_lo, s_hi, 0.5, k2);

            c = a;
            mul_pair(e_half, c);
            axpy_pair(c, 0.5 * dt, k2);
            stage(c, s_lo, s_hi, 0.5, k3);

            d = a;
            mul_pair(e_full, d);
            ComplexPair k3p = k3;
            mul_pair(e_half, k3p);
            axpy_pair(d, dt, k3p);
            stage(d, s_lo, s_hi, 1.0, k4);

            mul_pair(e_full, a);
            incr = k1;
            mul_pair(e_full, incr);
            mid = k2;
            axpy_pair(mid, 1.0, k3);
            mul_pair(e_half, mid);
            axpy_pair(incr, 2.0, mid);
            axpy_pair(incr, 1.0, k4);
            axpy_pair(a, dt / 6.0, incr);

            const double norm = l2_norm(a.U) + l2_norm(a.V);
            if (!std::isfinite(norm) || (prev_norm > 1e-250 && norm > 10.0 * prev_norm)) {
                result.blowup_level = level;
                result.blowup_time = double(n) * dt;
                blew = true;
                break;
            }
            prev_norm = norm;
            sup = std::max(sup, norm);
            cur_states[n + 1] = a;
            valid_upto = n + 1;
            std::swap(s_lo, s_hi);
        }

        ComplexShiftLevel out;
        out.sup_norm = sup;
        const std::size_t filled = blew ? valid_upto : steps;
        for (std::size_t n = 0; n <= filled; n += std::size_t(opts.store_every)) {
            out.times.push_back(double(n) * dt);
            out.states.push_back(cur_states[n]);
        }
        result.levels.push_back(std::move(out));
        result.sup_norms.push_back(sup);
        if (blew) break;

        std::swap(prev_states, cur_states);
    }
    return result;
}

}  // namespace ks2d
