#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ks2d/field.hpp"
#include "ks2d/initial_data.hpp"
#include "ks2d/radius.hpp"

using namespace ks2d;
using Catch::Approx;

namespace {
const double pi = two_pi / 2.0;
}

TEST_CASE("reality residual detects asymmetric data") {
    TorusSpec spec(pi, pi, 16, 16);
    SpectralField f(spec);
    f.u(1, 0) = Complex{1.0, 0.5};
    f.u(-1, 0) = std::conj(f.u(1, 0));
    CHECK(reality_residual(f) == 0.0);

    f.u(-1, 0) = Complex{0.0, 0.0};
    CHECK(reality_residual(f) > 0.5);

    enforce_reality(f);
    CHECK(reality_residual(f) == 0.0);
}

TEST_CASE("enforce_reality is a projection") {
    TorusSpec spec(pi, pi, 8, 8);
    SpectralField f(spec);
    std::mt19937_64 rng(7);
    auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53 - 0.5; };
    for (auto& z : f.uhat) z = Complex{unit(), unit()};
    for (auto& z : f.vhat) z = Complex{unit(), unit()};
    enforce_reality(f);
    SpectralField g = f;
    enforce_reality(g);
    for (std::size_t i = 0; i < f.uhat.size(); ++i) {
        CHECK(std::abs(f.uhat[i] - g.uhat[i]) == 0.0);
        CHECK(std::abs(f.vhat[i] - g.vhat[i]) == 0.0);
    }
}

TEST_CASE("gradient envelope data is curl-free, zero-mean and reproducible") {
    TorusSpec spec(pi, pi, 32, 32);
    InitialDataConfig cfg;
    cfg.kind = DataKind::random_envelope;
    cfg.amplitude = 1.0;
    cfg.spectral_exponent = 2.0;
    cfg.seed = 42;

    SpectralField f = make_initial_data(spec, cfg);
    CHECK(f.gradient_type);
    CHECK(curl_residual(f) < 1e-12);
    CHECK(reality_residual(f) < 1e-14);
    CHECK(std::abs(f.uhat[0]) == 0.0);
    CHECK(std::abs(f.vhat[0]) == 0.0);

    SpectralField g = make_initial_data(spec, cfg);
    for (std::size_t i = 0; i < f.uhat.size(); ++i) {
        CHECK(f.uhat[i] == g.uhat[i]);  // bitwise
        CHECK(f.vhat[i] == g.vhat[i]);
    }

    cfg.seed = 43;
    SpectralField h = make_initial_data(spec, cfg);
    double diff = 0.0;
    for (std::size_t i = 0; i < f.uhat.size(); ++i) diff += std::abs(f.uhat[i] - h.uhat[i]);
    CHECK(diff > 0.0);
}

TEST_CASE("amplitude zero gives the zero field") {
    TorusSpec spec(pi, pi, 16, 16);
    InitialDataConfig cfg;
    cfg.kind = DataKind::random_envelope;
    cfg.amplitude = 0.0;
    cfg.seed = 1;
    SpectralField f = make_initial_data(spec, cfg);
    CHECK(max_coefficient_magnitude(f) == 0.0);
}

TEST_CASE("plain envelope decays with the configured exponent") {
    // with independent components the shell peaks scale like |k~|^{-p}
    TorusSpec spec(pi, pi, 64, 64);
    InitialDataConfig cfg;
    cfg.kind = DataKind::random_envelope;
    cfg.amplitude = 1.0;
    cfg.spectral_exponent = 2.0;
    cfg.gradient = false;
    cfg.seed = 5;
    SpectralField f = make_initial_data(spec, cfg);

    // log-log fit of shell peaks against |k~|
    const double width = 2.0;
    std::vector<double> shell(40, 0.0);
    for_each_mode(spec, [&](std::size_t i, int k1, int k2) {
        if (k1 == 0 && k2 == 0) return;
        auto kt = spec.wavenumber(k1, k2);
        const double m = std::hypot(kt[0], kt[1]);
        std::size_t s = std::size_t(m / width);
        if (s < shell.size()) shell[s] = std::max(shell[s], std::abs(f.uhat[i]));
    });
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t s = 0; s < shell.size(); ++s) {
        if (shell[s] <= 0.0) continue;
        const double x = std::log((s + 0.5) * width);
        const double y = std::log(shell[s]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
    CHECK(slope == Approx(-2.0).margin(0.25));
}

TEST_CASE("single-mode data sits on the requested pair") {
    TorusSpec spec(pi, pi, 16, 16);
    InitialDataConfig cfg;
    cfg.kind = DataKind::single_mode;
    cfg.amplitude = 2.0;
    cfg.mode = {1, 0};
    SpectralField f = make_initial_data(spec, cfg);
    CHECK(curl_residual(f) < 1e-14);
    // gradient of phi = 2 cos(k~.x): uhat(1,0) = i*k~1*1
    auto kt = spec.wavenumber(1, 0);
    CHECK(f.u(1, 0).imag() == Approx(kt[0]).epsilon(1e-14));
    CHECK(f.u(-1, 0).imag() == Approx(-kt[0]).epsilon(1e-14));
    CHECK(std::abs(f.v(1, 0)) == 0.0);

    std::size_t nonzero = 0;
    for (const auto& z : f.uhat)
        if (std::abs(z) > 0.0) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("target norm rescaling") {
    TorusSpec spec(pi, pi, 32, 32);
    InitialDataConfig cfg;
    cfg.kind = DataKind::random_envelope;
    cfg.amplitude = 3.0;
    cfg.seed = 9;
    cfg.target = TargetNorm::wiener0;
    cfg.target_value = 0.125;
    SpectralField f = make_initial_data(spec, cfg);
    CHECK(wiener_norm(f, 0.0) == Approx(0.125).epsilon(1e-12));
}
