#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ks2d/duhamel.hpp"
#include "ks2d/semigroup.hpp"
#include "ks2d/stepper.hpp"

namespace ks2d {

// Constant used in the short-time / strip estimates.  It is a measured
// artifact parameter: the largest of the calibrated smoothing constants over
// the canonical exponent pairs, reported alongside every tabulation rather
// than hard-coded.
inline double analyticity_constant() {
    double c = 0.0;
    for (double p : {1.0, 2.0, 0.0}) c = std::max(c, smoothing_constant(p));
    return c;
}

inline double growth_factor_g(double T) {
    // e^{2T} * T^{(5-3s)/4} at s = 1
    return std::exp(2.0 * T) * (T >= 1.0 ? std::pow(T, 1.5) : std::sqrt(T));
}

inline double growth_factor_gtilde(double T) {
    return std::exp(T) * (T >= 1.0 ? T : std::sqrt(T));
}

inline double strip_halfwidth(double t, double C) {
    if (t <= 0.0) return 0.0;
    return std::exp(-t) * std::min(1.0, std::pow(t, 0.25)) / (2.0 * C);
}

struct ThresholdReport {
    double A = 0.0;
    double alpha = 0.0;
    double I1_bound = 0.0;
    double I2_bound = 0.0;
    double r1 = 0.0;
    double r = 0.0;
    double C = 0.0;
    std::optional<double> horizon;
    std::optional<double> data_l2;
    std::optional<double> T_star;                       // from e^T max(T,sqrt(T)) = 1/(2CM)
    std::vector<std::array<double, 2>> strip_halfwidth_table;  // (t, halfwidth)
};

// Smallness thresholds for the contraction ball: r1 = 1/(3(|I1|+|I2|)+1),
// r = 2 r1.  With a data size M the short-time horizon T* solves
// e^T max(T, sqrt(T)) = 1/(2 C M) (the left side is strictly increasing), and
// the strip halfwidth e^{-t} min(1, t^{1/4}) / (2C) is tabulated.
inline ThresholdReport thresholds(const TorusSpec& spec, double alpha,
                                  std::optional<double> horizon = std::nullopt,
                                  std::optional<double> data_l2 = std::nullopt,
                                  IndexNorm kind = IndexNorm::euclidean) {
    ThresholdReport rep;
    rep.alpha = alpha;
    rep.horizon = horizon;
    rep.data_l2 = data_l2;

    const SymbolTable table = build_symbol_table(spec, kind);
    rep.A = table.A;

    const IBounds bounds = i_bounds_analytic(spec, alpha, horizon, kind);
    rep.I1_bound = bounds.I1;
    rep.I2_bound = bounds.I2;
    rep.r1 = 1.0 / (3.0 * (bounds.I1 + bounds.I2) + 1.0);
    rep.r = 2.0 * rep.r1;
    rep.C = analyticity_constant();

    double t_max = horizon.value_or(1.0);
    if (data_l2 && *data_l2 > 0.0) {
        const double target = 1.0 / (2.0 * rep.C * *data_l2);
        double lo = 1e-12, hi = 1.0;
        while (growth_factor_gtilde(hi) < target) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (growth_factor_gtilde(mid) < target ? lo : hi) = mid;
        }
        rep.T_star = 0.5 * (lo + hi);
        t_max = std::max(t_max, *rep.T_star);
    }

    const int n_tab = 200;
    rep.strip_halfwidth_table.reserve(n_tab + 1);
    for (int i = 0; i <= n_tab; ++i) {
        const double t = t_max * double(i) / n_tab;
        rep.strip_halfwidth_table.push_back({t, strip_halfwidth(t, rep.C)});
    }
    return rep;
}

enum class Verdict { Continue, Suspect, CapExceeded };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Continue: return "CONTINUE";
        case Verdict::Suspect: return "SUSPECT";
        case Verdict::CapExceeded: return "CAP_EXCEEDED";
    }
    return "?";
}

struct MonitorReport {
    Verdict verdict = Verdict::Continue;
    double sup_l2 = 0.0;
    double M_cap = 0.0;
    double t0_suggest = 0.0;  // strictly below the (1/(2CM))^2 restart bound
    std::optional<double> last_valid_time;
};

// Continuation criterion: if the L2 norm stayed below the cap and the
// blow-up detector never fired, the run can be restarted with a horizon
// t0 < (1/(2 C M))^2; half that bound is suggested, which scales exactly
// like M^{-2}.
inline MonitorReport continuation_monitor(double sup_l2, std::optional<double> blowup_time,
                                          double M_cap,
                                          std::optional<double> C = std::nullopt) {
    MonitorReport rep;
    rep.M_cap = M_cap;
    rep.sup_l2 = sup_l2;
    const double Cval = C.value_or(analyticity_constant());

    if (blowup_time) {
        rep.verdict = Verdict::Suspect;
        rep.last_valid_time = blowup_time;
        return rep;
    }
    if (sup_l2 > M_cap) {
        rep.verdict = Verdict::CapExceeded;
        return rep;
    }
    rep.verdict = Verdict::Continue;
    const double bound = 1.0 / (2.0 * Cval * M_cap);
    rep.t0_suggest = 0.5 * bound * bound;
    return rep;
}

inline MonitorReport continuation_monitor(const IntegrationResult& run, double M_cap,
                                          std::optional<double> C = std::nullopt) {
    double sup = 0.0;
    for (const auto& f : run.trajectory.fields) sup = std::max(sup, l2_norm(f));
    return continuation_monitor(sup, run.blowup_time, M_cap, C);
}

}  // namespace ks2d
