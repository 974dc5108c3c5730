#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ks2d/initial_data.hpp"
#include "ks2d/semigroup.hpp"

using namespace ks2d;
using Catch::Approx;

namespace {
const double pi = two_pi / 2.0;

SpectralField random_field(const TorusSpec& spec, std::uint64_t seed) {
    InitialDataConfig cfg;
    cfg.kind = DataKind::random_envelope;
    cfg.amplitude = 1.0;
    cfg.spectral_exponent = 1.5;
    cfg.gradient = false;
    cfg.seed = seed;
    return make_initial_data(spec, cfg);
}
}  // namespace

TEST_CASE("semigroup at t = 0 is the identity") {
    TorusSpec spec(pi, pi, 16, 16);
    SpectralField f = random_field(spec, 3);
    SpectralField g = semigroup_apply(0.0, f);
    for (std::size_t i = 0; i < f.uhat.size(); ++i) {
        CHECK(g.uhat[i] == f.uhat[i]);
        CHECK(g.vhat[i] == f.vhat[i]);
    }
}

TEST_CASE("negative time is rejected") {
    SpectralField f(TorusSpec(pi, pi, 8, 8));
    CHECK_THROWS_AS(semigroup_apply(-0.1, f), std::invalid_argument);
}

TEST_CASE("decaying delta mode on the gap domain") {
    TorusSpec spec(pi, pi, 32, 32);
    SpectralField f(spec);
    f.u(1, 0) = Complex{1.0, 0.0};
    f.u(-1, 0) = Complex{1.0, 0.0};
    SpectralField g = semigroup_apply(0.1, f);  // sigma = 12
    CHECK(std::abs(g.u(1, 0)) == Approx(std::exp(-1.2)).epsilon(1e-13));
    CHECK(std::abs(g.u(-1, 0)) == Approx(std::exp(-1.2)).epsilon(1e-13));
}

TEST_CASE("growing delta mode on the 4pi domain") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 32, 32);
    SpectralField f(spec);
    f.u(1, 1) = Complex{1.0, 0.0};
    f.u(-1, -1) = Complex{1.0, 0.0};
    SpectralField g = semigroup_apply(1.0, f);  // sigma = -1/4
    CHECK(std::abs(g.u(1, 1)) == Approx(std::exp(0.25)).epsilon(1e-13));
}

TEST_CASE("semigroup property") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 32, 32);
    SpectralField f = random_field(spec, 17);
    SpectralField one = semigroup_apply(0.75, f);
    SpectralField two = semigroup_apply(0.3, semigroup_apply(0.45, f));
    for (std::size_t i = 0; i < f.uhat.size(); ++i) {
        CHECK(std::abs(one.uhat[i] - two.uhat[i]) <=
              1e-12 * std::max(1.0, std::abs(one.uhat[i])));
    }
}

TEST_CASE("semigroup commutes with conjugate-symmetry enforcement") {
    TorusSpec spec(pi, pi, 16, 16);
    SpectralField f = random_field(spec, 23);
    // perturb symmetry so the projection has something to do
    f.u(2, 1) += Complex{1e-3, 2e-3};

    SpectralField a = semigroup_apply(0.2, f);
    enforce_reality(a);
    SpectralField b = f;
    enforce_reality(b);
    b = semigroup_apply(0.2, b);
    for (std::size_t i = 0; i < a.uhat.size(); ++i)
        CHECK(std::abs(a.uhat[i] - b.uhat[i]) <= 1e-15 * std::max(1.0, std::abs(a.uhat[i])));
}

TEST_CASE("multiplier sup with s = r reduces to the worst growth factor") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 32, 32);
    for (double t : {0.01, 0.1, 1.0}) {
        SmoothingCheck chk = smoothing_check(spec, t, 1.0, 1.0);
        // min over nonzero modes of sigma is -1/4 on this domain
        CHECK(chk.measured_sup == Approx(std::exp(t / 4.0)).epsilon(1e-12));
        CHECK(chk.measured_sup <= std::exp(t / 4.0) * (1.0 + 1e-12));
        CHECK(chk.measured_sup <= chk.bound);
    }
}

TEST_CASE("multiplier sup matches a brute-force lattice scan") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 64, 64);
    const double t = 0.01, s = 1.0, r = 0.0;
    SmoothingCheck chk = smoothing_check(spec, t, s, r);

    double brute = 0.0;
    for (int k1 = -31; k1 <= 32; ++k1) {
        for (int k2 = -31; k2 <= 32; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            auto kt = spec.wavenumber(k1, k2);
            const double mag = std::sqrt(kt[0] * kt[0] + kt[1] * kt[1]);
            brute = std::max(brute, mag * std::exp(-t * sigma_eval(kt)));
        }
    }
    CHECK(chk.measured_sup == Approx(brute).epsilon(1e-12));
}

TEST_CASE("gap domains damp every derivative-weighted multiplier at late times") {
    TorusSpec spec(pi, pi, 32, 32);
    SmoothingCheck chk = smoothing_check(spec, 50.0, 1.0, 0.0);
    CHECK(chk.measured_sup < 1e-200);
}

TEST_CASE("lattice multiplier stays below the calibrated envelope") {
    for (auto [s, r] : {std::pair{1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}}) {
        for (double t : {0.01, 0.1, 1.0}) {
            for (double L : {pi, 4.0 * pi}) {
                TorusSpec spec(L, L, 64, 64);
                SmoothingCheck chk = smoothing_check(spec, t, s, r);
                INFO("s=" << s << " r=" << r << " t=" << t << " L=" << L);
                CHECK(chk.measured_sup <= chk.bound);
                CHECK(chk.constant > 0.0);
            }
        }
    }
}

TEST_CASE("continuum multiplier sup agrees with a grid search") {
    for (double p : {1.0, 2.0}) {
        for (double t : {0.02, 0.5, 3.0}) {
            double grid = 0.0;
            for (int i = 1; i <= 40000; ++i) {
                const double x = 8.0 * i / 40000.0;
                grid = std::max(grid, std::pow(x, p) * std::exp(-t * (std::pow(x, 4) - x * x)));
            }
            CHECK(continuum_multiplier_sup(p, t) == Approx(grid).epsilon(1e-6));
            CHECK(continuum_multiplier_sup(p, t) >= grid * (1.0 - 1e-9));
        }
    }
}
