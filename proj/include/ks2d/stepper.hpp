#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "ks2d/nonlinearity.hpp"
#include "ks2d/norms.hpp"
#include "ks2d/semigroup.hpp"
#include "ks2d/trajectory.hpp"

namespace ks2d {

enum class Scheme { IFRK4 };

struct StepperConfig {
    double dt = 1e-3;
    double T = 1.0;
    Scheme scheme = Scheme::IFRK4;
    DealiasMode dealias = DealiasMode::two_thirds;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("StepperConfig: dt must be > 0");
        if (!(T > 0.0)) throw std::invalid_argument("StepperConfig: T must be > 0");
        if (dt > T + 1e-15) throw std::invalid_argument("StepperConfig: dt must be <= T");
    }
};

struct IntegrationOptions {
    int store_every = 1;  // trajectory snapshot stride
    // called at every accepted grid point, including t = 0
    std::function<void(std::size_t step, double t, const SpectralField&)> observer;
};

struct IntegrationResult {
    Trajectory trajectory;
    std::optional<double> blowup_time;  // last valid time when the detector fired
    std::size_t steps_taken = 0;

    bool blew_up() const { return blowup_time.has_value(); }
};

/*
 * Integrating-factor RK4.  The linear flow is applied exactly through the
 * per-step multipliers E1 = e^{-sigma dt/2}, E2 = e^{-sigma dt}, so there is
 * no linear stability restriction; classical RK4 handles the transformed
 * nonlinearity.  With a = u(t_n) and N the nonlinearity:
 *
 *   b = E1 (a + dt/2 N(a))          k2 = N(b)
 *   c = E1 a + dt/2 k2              k3 = N(c)
 *   d = E2 a + dt E1 k3             k4 = N(d)
 *   u(t_{n+1}) = E2 a + dt/6 (E2 N(a) + 2 E1 (k2 + k3) + k4)
 *
 * A step is rejected if the L2 norm grows by more than 10x or stops being
 * finite; the run then terminates carrying the last valid time.
 */
inline IntegrationResult integrate(const SpectralField& u0, const StepperConfig& cfg,
                                   const IntegrationOptions& opts = {}) {
    cfg.validate();
    if (opts.store_every < 1) throw std::invalid_argument("integrate: store_every must be >= 1");
    const TorusSpec& spec = u0.spec;
    const std::size_t steps = std::size_t(std::llround(cfg.T / cfg.dt));
    const double dt = cfg.dt;

    std::vector<double> e_half(spec.modes()), e_full(spec.modes());
    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        const double s = sigma_at(spec, k1, k2);
        e_half[i] = std::exp(-0.5 * dt * s);
        e_full[i] = std::exp(-dt * s);
    });

    auto mul = [&](const std::vector<double>& e, SpectralField& f) {
        for (std::size_t i = 0; i < f.uhat.size(); ++i) {
            f.uhat[i] *= e[i];
            f.vhat[i] *= e[i];
        }
    };

    IntegrationResult result;
    result.trajectory = Trajectory(spec);

    SpectralField a = u0;
    double prev_l2 = l2_norm(a);

    auto record = [&](std::size_t n, double t, const SpectralField& f) {
        if (opts.observer) opts.observer(n, t, f);
        if (n % std::size_t(opts.store_every) == 0) result.trajectory.append(t, f);
    };
    record(0, 0.0, a);

    for (std::size_t n = 0; n < steps; ++n) {
        const SpectralField k1 = nonlinearity(a, cfg.dealias);

        SpectralField b = a;
        b.axpy(0.5 * dt, k1);
        mul(e_half, b);
        const SpectralField k2 = nonlinearity(b, cfg.dealias);

        SpectralField c = a;
        mul(e_half, c);
        c.axpy(0.5 * dt, k2);
        const SpectralField k3 = nonlinearity(c, cfg.dealias);

        SpectralField d = a;
        mul(e_full, d);
        SpectralField k3p = k3;
        mul(e_half, k3p);
        d.axpy(dt, k3p);
        const SpectralField k4 = nonlinearity(d, cfg.dealias);

        mul(e_full, a);  // E2 a
        SpectralField incr = k1;
        mul(e_full, incr);  // E2 k1
        SpectralField mid = k2;
        mid.axpy(1.0, k3);
        mul(e_half, mid);  // E1 (k2 + k3)
        incr.axpy(2.0, mid);
        incr.axpy(1.0, k4);
        a.axpy(dt / 6.0, incr);

        const double t = double(n + 1) * dt;
        const double cur_l2 = l2_norm(a);
        const bool finite = std::isfinite(cur_l2);
        if (!finite || (prev_l2 > 1e-250 && cur_l2 > 10.0 * prev_l2)) {
            result.blowup_time = double(n) * dt;
            result.steps_taken = n;
            return result;
        }
        prev_l2 = cur_l2;
        record(n + 1, t, a);
        result.steps_taken = n + 1;
    }
    return result;
}

}  // namespace ks2d
