#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ks2d/initial_data.hpp"
#include "ks2d/nonlinearity.hpp"
#include "ks2d/semigroup.hpp"
#include "ks2d/stepper.hpp"

using namespace ks2d;
using Catch::Approx;

namespace {
const double pi = two_pi / 2.0;

SpectralField gradient_data(const TorusSpec& spec, std::uint64_t seed, double l2_target) {
    InitialDataConfig cfg;
    cfg.kind = DataKind::random_envelope;
    cfg.amplitude = 1.0;
    cfg.spectral_exponent = 2.0;
    cfg.seed = seed;
    cfg.target = TargetNorm::l2;
    cfg.target_value = l2_target;
    return make_initial_data(spec, cfg);
}
}  // namespace

TEST_CASE("nonlinearity of a constant field vanishes") {
    TorusSpec spec(pi, pi, 16, 16);
    SpectralField f(spec);
    f.u(0, 0) = Complex{2.5, 0.0};
    f.v(0, 0) = Complex{-1.0, 0.0};
    SpectralField n = nonlinearity(f);
    CHECK(max_coefficient_magnitude(n) == 0.0);
}

TEST_CASE("nonlinearity of a single cosine pair lands on the doubled mode") {
    TorusSpec spec(pi, pi, 32, 32);
    // u = a cos(k~.x), v = b cos(k~.x) at k0 = (1,0)
    const double a = 0.8, b = 0.3;
    SpectralField f(spec);
    f.u(1, 0) = Complex{a / 2, 0.0};
    f.u(-1, 0) = Complex{a / 2, 0.0};
    f.v(1, 0) = Complex{b / 2, 0.0};
    f.v(-1, 0) = Complex{b / 2, 0.0};

    SpectralField n = nonlinearity(f);
    // -(grad/2)(u^2+v^2) = (a^2+b^2)/2 k~ sin(2 k~.x)
    auto kt = spec.wavenumber(1, 0);
    const double expected_im = -(a * a + b * b) / 4.0 * kt[0];
    CHECK(n.u(2, 0).imag() == Approx(expected_im).epsilon(1e-13));
    CHECK(n.u(2, 0).real() == Approx(0.0).margin(1e-15));
    CHECK(std::abs(n.u(0, 0)) == 0.0);
    CHECK(std::abs(n.v(2, 0)) == Approx(0.0).margin(1e-16));  // k~2 = 0

    // support is exactly {+-2k0}
    std::size_t nonzero = 0;
    for (const auto& z : n.uhat)
        if (std::abs(z) > 1e-14) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("nonlinearity output has exactly zero mean and is curl-free") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 32, 32);
    SpectralField f = gradient_data(spec, 31, 1.0);
    SpectralField n = nonlinearity(f);
    CHECK(std::abs(n.uhat[0]) == 0.0);
    CHECK(std::abs(n.vhat[0]) == 0.0);
    CHECK(curl_residual(n) < 1e-13);
    CHECK(n.gradient_type);
}

TEST_CASE("dealias mask removes the upper third") {
    TorusSpec spec(pi, pi, 32, 32);
    CHECK(dealias_keep(spec, 10, 0, DealiasMode::two_thirds));
    CHECK_FALSE(dealias_keep(spec, 11, 0, DealiasMode::two_thirds));
    CHECK(dealias_keep(spec, 16, 16, DealiasMode::none));
}

TEST_CASE("zero data integrates to zero") {
    TorusSpec spec(pi, pi, 16, 16);
    StepperConfig cfg;
    cfg.dt = 1e-2;
    cfg.T = 0.1;
    IntegrationResult res = integrate(SpectralField(spec), cfg);
    CHECK_FALSE(res.blew_up());
    for (const auto& f : res.trajectory.fields) CHECK(max_coefficient_magnitude(f) == 0.0);
}

TEST_CASE("stepper config validation") {
    StepperConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.dt = 0.5;
    cfg.T = 0.25;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("tiny single-mode data follows the linear decay") {
    TorusSpec spec(pi, pi, 32, 32);
    InitialDataConfig dcfg;
    dcfg.kind = DataKind::single_mode;
    dcfg.amplitude = 1e-8;
    dcfg.mode = {1, 0};
    SpectralField u0 = make_initial_data(spec, dcfg);

    StepperConfig cfg;
    cfg.dt = 1e-2;
    cfg.T = 1.0;
    IntegrationOptions opts;
    opts.store_every = 10;
    IntegrationResult res = integrate(u0, cfg, opts);

    const double a0 = std::abs(u0.u(1, 0));
    for (std::size_t n = 0; n < res.trajectory.size(); ++n) {
        const double t = res.trajectory.times[n];
        const double expected = a0 * std::exp(-12.0 * t);
        const double got = std::abs(res.trajectory.fields[n].u(1, 0));
        CHECK(got == Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("fourth-order self-convergence under dt halving") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 32, 32);
    SpectralField u0 = gradient_data(spec, 8, 0.3);

    auto final_field = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.T = 0.25;
        IntegrationOptions opts;
        opts.store_every = int(std::llround(cfg.T / dt));
        IntegrationResult res = integrate(u0, cfg, opts);
        REQUIRE_FALSE(res.blew_up());
        return res.trajectory.fields.back();
    };

    SpectralField ref = final_field(1.25e-4);
    auto err = [&](const SpectralField& f) {
        SpectralField d = f;
        d.axpy(-1.0, ref);
        return l2_norm(d);
    };
    const double e1 = err(final_field(2e-3));
    const double e2 = err(final_field(1e-3));
    INFO("e1=" << e1 << " e2=" << e2 << " ratio=" << e1 / e2);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("invariants hold along a forced trajectory") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 32, 32);
    SpectralField u0 = gradient_data(spec, 21, 0.4);

    StepperConfig cfg;
    cfg.dt = 2e-3;
    cfg.T = 5.0;
    IntegrationOptions opts;
    opts.store_every = 250;
    IntegrationResult res = integrate(u0, cfg, opts);
    REQUIRE_FALSE(res.blew_up());

    for (const auto& f : res.trajectory.fields) {
        CHECK(std::abs(f.uhat[0]) == 0.0);  // zero mean is conserved exactly
        CHECK(std::abs(f.vhat[0]) == 0.0);
        CHECK(curl_residual(f) < 1e-10);
        CHECK(reality_residual(f) < 1e-10);
    }
}

TEST_CASE("blow-up detector reports the last valid time") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 32, 32);
    SpectralField u0 = gradient_data(spec, 4, 1e4);

    StepperConfig cfg;
    cfg.dt = 5e-2;
    cfg.T = 1.0;
    IntegrationResult res = integrate(u0, cfg);
    REQUIRE(res.blew_up());
    CHECK(*res.blowup_time < 1.0);
    CHECK(res.trajectory.times.back() == Approx(*res.blowup_time).margin(cfg.dt + 1e-12));
}
