#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ks2d/symbol.hpp"

using namespace ks2d;
using Catch::Approx;

namespace {

const double pi = two_pi / 2.0;

// Independent five-term expansion of the symbol, written directly from the
// derivative symbols (2*pi*i*k_a/L_a)^2 and kept separate from sigma_eval.
double sigma_expanded(double L1, double L2, int k1, int k2) {
    const double pi2 = pi * pi;
    const double pi4 = pi2 * pi2;
    const double a = double(k1) * k1 / (L1 * L1);
    const double b = double(k2) * k2 / (L2 * L2);
    return 16.0 * pi4 * a * a + 32.0 * pi4 * a * b + 16.0 * pi4 * b * b - 4.0 * pi2 * a -
           4.0 * pi2 * b;
}

// Brute-force census over a large lattice, independent of SymbolTable.
struct BruteResult {
    std::size_t growing = 0;
    double min_ratio = std::numeric_limits<double>::infinity();
    double min_sigma = std::numeric_limits<double>::infinity();
    bool neutral = false;
};

BruteResult brute_census(double L1, double L2, int half = 64) {
    BruteResult r;
    for (int k1 = -half; k1 <= half; ++k1) {
        for (int k2 = -half; k2 <= half; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            const double s = sigma_expanded(L1, L2, k1, k2);
            if (s < 0.0) ++r.growing;
            if (s == 0.0) r.neutral = true;
            r.min_sigma = std::min(r.min_sigma, s);
            r.min_ratio = std::min(r.min_ratio, s / std::hypot(double(k1), double(k2)));
        }
    }
    return r;
}

}  // namespace

TEST_CASE("wavenumber map") {
    TorusSpec spec(2.0 * pi, 2.0 * pi, 16, 16);
    auto zero = spec.wavenumber(0, 0);
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);

    auto unit = spec.wavenumber(1, 0);
    CHECK(unit[0] == Approx(1.0).epsilon(1e-15));
    CHECK(unit[1] == 0.0);

    TorusSpec small(pi, pi, 16, 16);
    auto diag = small.wavenumber(1, 1);
    CHECK(diag[0] == Approx(2.0).epsilon(1e-15));
    CHECK(diag[1] == Approx(2.0).epsilon(1e-15));

    // bijection on the resolved lattice
    std::set<std::pair<int, int>> seen;
    for_each_mode(spec, [&](std::size_t, int k1, int k2) {
        CHECK(spec.resolved(k1, k2));
        seen.emplace(k1, k2);
    });
    CHECK(seen.size() == spec.modes());
}

TEST_CASE("TorusSpec validation") {
    CHECK_THROWS_AS(TorusSpec(0.0, 1.0, 16, 16), std::invalid_argument);
    CHECK_THROWS_AS(TorusSpec(1.0, -1.0, 16, 16), std::invalid_argument);
    CHECK_THROWS_AS(TorusSpec(1.0, 1.0, 15, 16), std::invalid_argument);
    CHECK_THROWS_AS(TorusSpec(1.0, 1.0, 16, 2), std::invalid_argument);
}

TEST_CASE("sigma at hand-checked points") {
    CHECK(sigma_eval({0.0, 0.0}) == 0.0);
    CHECK(sigma_eval({1.0, 0.0}) == Approx(0.0).margin(1e-15));  // neutral circle
    TorusSpec spec(pi, pi, 32, 32);
    CHECK(sigma_at(spec, 1, 0) == Approx(12.0).epsilon(1e-14));  // 16 - 4
}

TEST_CASE("sigma matches the five-term expansion") {
    for (auto [L1, L2] : {std::pair{pi, pi}, {4.0 * pi, 4.0 * pi}, {1.7, 5.3}, {2.0 * pi, 0.9}}) {
        TorusSpec spec(L1, L2, 32, 32);
        for_each_mode(spec, [&](std::size_t, int k1, int k2) {
            const double direct = sigma_at(spec, k1, k2);
            const double expanded = sigma_expanded(L1, L2, k1, k2);
            CHECK(direct == Approx(expanded).epsilon(1e-12).margin(1e-12));
        });
    }
}

TEST_CASE("symbol table on the gap domain L = pi") {
    TorusSpec spec(pi, pi, 32, 32);
    SymbolTable t = build_symbol_table(spec);
    CHECK(t.growing.empty());
    CHECK(t.has_gap);
    CHECK(t.A == Approx(12.0).epsilon(1e-12));

    BruteResult brute = brute_census(pi, pi);
    CHECK(t.A == Approx(brute.min_ratio).epsilon(1e-12));
    CHECK(brute.growing == 0);
}

TEST_CASE("symbol table on the eight-mode domain L = 4pi") {
    TorusSpec spec(4.0 * pi, 4.0 * pi, 32, 32);
    SymbolTable t = build_symbol_table(spec);
    CHECK(t.growing.size() == 8);
    CHECK_FALSE(t.has_gap);

    const std::set<std::pair<int, int>> expected{{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                                 {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
    std::set<std::pair<int, int>> got;
    for (auto& k : t.growing) got.emplace(k[0], k[1]);
    CHECK(got == expected);

    // ordered by increasing |k~|: four axis modes before the diagonals
    for (int i = 0; i < 4; ++i) CHECK(std::abs(t.growing[i][0]) + std::abs(t.growing[i][1]) == 1);
    for (int i = 4; i < 8; ++i) CHECK(std::abs(t.growing[i][0]) + std::abs(t.growing[i][1]) == 2);

    // minimum of sigma is -1/4, attained on the diagonal modes
    double min_growing = 0.0;
    for (auto& k : t.growing) min_growing = std::min(min_growing, t.sigma_of(k[0], k[1]));
    CHECK(min_growing == Approx(-0.25).margin(1e-12));

    // most unstable mode: |k~|^2 closest to 1/2; lexicographic tie-break
    CHECK(t.k0 == std::array<int, 2>{-1, -1});
    auto kt = spec.wavenumber(t.k0[0], t.k0[1]);
    CHECK(kt[0] * kt[0] + kt[1] * kt[1] == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("boundary domain L = 2pi has no gap but empty growing list") {
    TorusSpec spec(2.0 * pi, 2.0 * pi, 32, 32);
    SymbolTable t = build_symbol_table(spec);
    CHECK(t.growing.empty());
    CHECK_FALSE(t.has_gap);
    CHECK(t.A == 0.0);
}

TEST_CASE("growing-mode counts match brute enumeration") {
    const std::pair<double, double> domains[] = {
        {pi, pi},           {4.0 * pi, 4.0 * pi}, {2.0 * pi, 2.0 * pi}, {2.5 * pi, 2.5 * pi},
        {4.0 * pi, pi},     {6.0 * pi, 6.0 * pi}, {0.1, 0.1},           {3.0 * pi, 3.0 * pi},
        {pi, 4.0 * pi},     {5.0 * pi, 2.0 * pi},
    };
    for (auto [L1, L2] : domains) {
        TorusSpec spec(L1, L2, 64, 64);
        CHECK(count_growing_modes(spec) == brute_census(L1, L2).growing);
    }
}

TEST_CASE("tiny domains have no growing modes") {
    CHECK(count_growing_modes(TorusSpec(0.1, 0.1, 16, 16)) == 0);
}

TEST_CASE("growing list symmetric under axis swap when L1 == L2") {
    TorusSpec spec(6.0 * pi, 6.0 * pi, 32, 32);
    SymbolTable t = build_symbol_table(spec);
    std::set<std::pair<int, int>> got;
    for (auto& k : t.growing) got.emplace(k[0], k[1]);
    for (auto& [k1, k2] : got) CHECK(got.count({k2, k1}) == 1);
}

TEST_CASE("gap iff no growing and no nonzero neutral modes, lattices up to 64^2") {
    for (auto [L1, L2] : {std::pair{pi, pi}, {1.5 * pi, 1.5 * pi}, {2.0 * pi, 2.0 * pi},
                          {2.5 * pi, pi},    {4.0 * pi, 4.0 * pi}, {1.9 * pi, 0.7 * pi}}) {
        TorusSpec spec(L1, L2, 64, 64);
        SymbolTable t = build_symbol_table(spec);
        BruteResult brute = brute_census(L1, L2);
        const bool expect_gap = (brute.growing == 0) && !brute.neutral;
        CHECK(t.has_gap == expect_gap);
        CHECK((t.A > 0.0) == expect_gap);
    }
}

TEST_CASE("A knob: l1 index norm changes the gap constant") {
    TorusSpec spec(pi, pi, 32, 32);
    SymbolTable t = build_symbol_table(spec, IndexNorm::l1);
    // minimizer stays at |k|=1 axis modes where both norms agree
    CHECK(t.A == Approx(12.0).epsilon(1e-12));
    // (1,1): euclid ratio 56/sqrt(2) ~ 39.6, l1 ratio 56/2 = 28
    CHECK(index_norm(1, 1, IndexNorm::l1) == 2.0);
}

TEST_CASE("too-coarse grid for the gap minimizer is rejected") {
    CHECK_THROWS_AS(build_symbol_table(TorusSpec(4.0 * pi, 4.0 * pi, 4, 4)),
                    std::runtime_error);
}

TEST_CASE("symbol CSV dump") {
    TorusSpec spec(pi, pi, 4, 4);
    SymbolTable t = build_symbol_table(spec);
    std::ostringstream os;
    write_symbol_csv(t, os);
    const std::string text = os.str();
    CHECK(text.rfind("k1,k2,ktilde1,ktilde2,sigma\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 16);
}
