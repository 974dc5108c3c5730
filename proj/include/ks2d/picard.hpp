#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ks2d/duhamel.hpp"
#include "ks2d/nonlinearity.hpp"
#include "ks2d/norms.hpp"

namespace ks2d {

/*
 * Fixed point of the mild-solution map
 *
 *   T(u,v)(t) = e^{-t sigma} (u0,v0) - (I_1 w, I_2 w)(t),   w = (u^2+v^2)/2,
 *
 * iterated from the trend e^{-t sigma}(u0,v0) on a uniform time grid, with
 * residuals measured in the discretized exponentially weighted space-time
 * norm.  Without a horizon the norm stands in for the [0,inf) sup on the
 * grid and requires a spectral gap with alpha in (0,A); with a horizon the
 * finite-horizon norm is used and any domain is admitted.
 */
struct PicardOptions {
    double dt = 1e-3;
    double T = 1.0;          // grid horizon when `horizon` is not given
    int max_iters = 25;
    double tol = 1e-12;      // absolute residual target
    DealiasMode dealias = DealiasMode::two_thirds;
    IndexNorm norm_kind = IndexNorm::euclidean;
};

struct PicardReport {
    int iterates = 0;
    std::vector<double> residuals;
    std::vector<double> contraction_ratios;
    bool converged = false;
    bool diverged = false;
    double threshold_r1 = 0.0;
    double data_norm = 0.0;  // |u0|_0 + |v0|_0
    double alpha = 0.0;
    std::optional<double> horizon;
};

struct PicardResult {
    Trajectory trajectory;
    PicardReport report;
};

inline PicardResult picard_mild_solve(const SpectralField& u0, double alpha,
                                      std::optional<double> horizon = std::nullopt,
                                      const PicardOptions& opts = {}) {
    const TorusSpec& spec = u0.spec;
    const double T_grid = horizon ? *horizon : opts.T;
    if (!(opts.dt > 0.0) || !(T_grid >= opts.dt))
        throw std::invalid_argument("picard_mild_solve: need 0 < dt <= T");

    PicardResult result;
    PicardReport& rep = result.report;
    rep.alpha = alpha;
    rep.horizon = horizon;
    rep.data_norm = wiener_norm(u0, 0.0, opts.norm_kind);

    // analytic bounds fix the smallness threshold r1 = 1/(3(|I1|+|I2|)+1)
    const IBounds bounds = i_bounds_analytic(spec, alpha, horizon, opts.norm_kind);
    rep.threshold_r1 = 1.0 / (3.0 * (bounds.I1 + bounds.I2) + 1.0);

    const std::size_t steps = std::size_t(std::llround(T_grid / opts.dt));
    const std::size_t levels = steps + 1;
    const double dt = opts.dt;

    std::vector<double> times(levels);
    for (std::size_t n = 0; n < levels; ++n) times[n] = double(n) * dt;

    // per-mode step factors for the trend and the quadrature
    std::vector<double> e_full(spec.modes()), q_a(spec.modes()), q_b(spec.modes()),
        weight_rate(spec.modes());
    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        const double z = sigma_at(spec, k1, k2) * dt;
        e_full[i] = std::exp(-z);
        q_a[i] = dt * phi_a(z);
        q_b[i] = dt * phi_b(z);
        weight_rate[i] = alpha * index_norm(k1, k2, opts.norm_kind);
    });

    // iterate 0: the trend
    Trajectory cur(spec);
    cur.times = times;
    cur.fields.assign(levels, SpectralField(spec, u0.gradient_type));
    {
        SpectralField f = u0;
        cur.fields[0] = f;
        for (std::size_t n = 1; n < levels; ++n) {
            for (std::size_t i = 0; i < f.uhat.size(); ++i) {
                f.uhat[i] *= e_full[i];
                f.vhat[i] *= e_full[i];
            }
            cur.fields[n] = f;
        }
    }

    thread_local ProductWorkspace ws;
    std::vector<Complex> w_prev(spec.modes()), w_cur(spec.modes());
    std::vector<Complex> J(spec.modes());  // one integral serves both components
    std::vector<double> mode_residual(spec.modes());

    Trajectory next(spec);
    next.times = times;
    next.fields.assign(levels, SpectralField(spec, u0.gradient_type));

    const double res_scale = std::max(1.0, rep.data_norm);
    for (int m = 0; m < opts.max_iters; ++m) {
        std::fill(J.begin(), J.end(), Complex{0.0, 0.0});
        std::fill(mode_residual.begin(), mode_residual.end(), 0.0);

        SpectralField trend = u0;
        half_speed_square(cur.fields[0], opts.dealias, ws, w_cur);
        next.fields[0] = u0;

        for (std::size_t n = 1; n < levels; ++n) {
            std::swap(w_prev, w_cur);
            half_speed_square(cur.fields[n], opts.dealias, ws, w_cur);
            SpectralField& out = next.fields[n];
            const SpectralField& old = cur.fields[n];
            for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
                trend.uhat[i] *= e_full[i];
                trend.vhat[i] *= e_full[i];
                J[i] = e_full[i] * J[i] + q_a[i] * w_prev[i] + q_b[i] * w_cur[i];
                auto kt = spec.wavenumber(k1, k2);
                out.uhat[i] = trend.uhat[i] - Complex{0.0, kt[0]} * J[i];
                out.vhat[i] = trend.vhat[i] - Complex{0.0, kt[1]} * J[i];
                const double w = std::exp(weight_rate[i] * times[n]);
                const double diff =
                    w * (std::abs(out.uhat[i] - old.uhat[i]) + std::abs(out.vhat[i] - old.vhat[i]));
                if (diff > mode_residual[i]) mode_residual[i] = diff;
            });
        }

        double residual = 0.0;
        for (double v : mode_residual) residual += v;

        rep.iterates = m + 1;
        rep.residuals.push_back(residual);
        if (m > 0 && rep.residuals[m - 1] > 0.0)
            rep.contraction_ratios.push_back(residual / rep.residuals[m - 1]);

        std::swap(cur.fields, next.fields);

        if (!std::isfinite(residual) || residual > 1e6 * res_scale) {
            rep.diverged = true;
            break;
        }
        if (residual <= opts.tol) {
            rep.converged = true;
            break;
        }
    }

    result.trajectory = std::move(cur);
    return result;
}

}  // namespace ks2d
