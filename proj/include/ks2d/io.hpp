#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ks2d/duhamel.hpp"
#include "ks2d/field.hpp"
#include "ks2d/norms.hpp"
#include "ks2d/picard.hpp"
#include "ks2d/thresholds.hpp"

namespace ks2d {

using json = nlohmann::json;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// CSV layout is fixed: t,l2,h1dot,wiener0,rho_est with a mandatory header.
inline void write_norm_series_csv(const NormSeries& s, std::ostream& os) {
    os << "t,l2,h1dot,wiener0,rho_est\n";
    for (std::size_t n = 0; n < s.size(); ++n) {
        os << format_double(s.times[n]) << ',' << format_double(s.l2[n]) << ','
           << format_double(s.h1dot[n]) << ',' << format_double(s.wiener0[n]) << ','
           << format_double(s.rho_est[n]) << '\n';
    }
}

/*
 * Spectra snapshot file (little endian):
 *   bytes 0..3   magic "KS2D"
 *   u32          format version (1)
 *   i32 N1, N2
 *   f64 L1, L2, t
 *   u32          flags (bit 0: gradient-type)
 *   N1*N2 records of f64 {u_re, u_im, v_re, v_im}, FFT index order
 */
inline void write_spectra(const SpectralField& f, double t, std::ostream& os) {
    os.write("KS2D", 4);
    auto put = [&os](const void* p, std::size_t n) { os.write(static_cast<const char*>(p), n); };
    const std::uint32_t version = 1;
    put(&version, 4);
    const std::int32_t n1 = f.spec.N1, n2 = f.spec.N2;
    put(&n1, 4);
    put(&n2, 4);
    put(&f.spec.L1, 8);
    put(&f.spec.L2, 8);
    put(&t, 8);
    const std::uint32_t flags = f.gradient_type ? 1u : 0u;
    put(&flags, 4);
    for (std::size_t i = 0; i < f.spec.modes(); ++i) {
        const double rec[4] = {f.uhat[i].real(), f.uhat[i].imag(), f.vhat[i].real(),
                               f.vhat[i].imag()};
        put(rec, sizeof(rec));
    }
}

struct SpectraFile {
    SpectralField field;
    double t = 0.0;
};

inline SpectraFile read_spectra(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "KS2D", 4) != 0)
        throw std::runtime_error("read_spectra: bad magic");
    auto get = [&is](void* p, std::size_t n) {
        is.read(static_cast<char*>(p), std::streamsize(n));
        if (!is) throw std::runtime_error("read_spectra: truncated file");
    };
    std::uint32_t version = 0;
    get(&version, 4);
    if (version != 1) throw std::runtime_error("read_spectra: unsupported version");
    std::int32_t n1 = 0, n2 = 0;
    get(&n1, 4);
    get(&n2, 4);
    double L1 = 0, L2 = 0, t = 0;
    get(&L1, 8);
    get(&L2, 8);
    get(&t, 8);
    std::uint32_t flags = 0;
    get(&flags, 4);
    SpectraFile out{SpectralField(TorusSpec(L1, L2, n1, n2), (flags & 1u) != 0), t};
    for (std::size_t i = 0; i < out.field.spec.modes(); ++i) {
        double rec[4];
        get(rec, sizeof(rec));
        out.field.uhat[i] = Complex{rec[0], rec[1]};
        out.field.vhat[i] = Complex{rec[2], rec[3]};
    }
    return out;
}

inline json to_json(const OperatorNormReport& r) {
    json j;
    j["alpha"] = r.alpha;
    if (r.horizon) j["horizon"] = *r.horizon;
    j["bound_I1"] = r.bound_I1;
    j["bound_I2"] = r.bound_I2;
    j["empirical_I1"] = r.empirical_I1;
    j["empirical_I2"] = r.empirical_I2;
    j["probes"] = r.probes;
    return j;
}

inline json to_json(const ThresholdReport& r) {
    json j;
    j["A"] = r.A;
    j["alpha"] = r.alpha;
    j["I1_bound"] = r.I1_bound;
    j["I2_bound"] = r.I2_bound;
    j["r1"] = r.r1;
    j["r"] = r.r;
    j["C"] = r.C;
    if (r.horizon) j["horizon"] = *r.horizon;
    if (r.data_l2) j["data_l2"] = *r.data_l2;
    if (r.T_star) j["T_star"] = *r.T_star;
    json table = json::array();
    for (const auto& row : r.strip_halfwidth_table) table.push_back({row[0], row[1]});
    j["strip_halfwidth"] = std::move(table);
    return j;
}

inline json to_json(const PicardReport& r) {
    json j;
    j["iterates"] = r.iterates;
    j["residuals"] = r.residuals;
    j["contraction_ratios"] = r.contraction_ratios;
    j["converged"] = r.converged;
    j["diverged"] = r.diverged;
    j["threshold_r1"] = r.threshold_r1;
    j["data_norm"] = r.data_norm;
    j["alpha"] = r.alpha;
    if (r.horizon) j["horizon"] = *r.horizon;
    return j;
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace ks2d
