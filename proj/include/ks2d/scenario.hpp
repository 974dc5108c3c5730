#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ks2d/complex_shift.hpp"
#include "ks2d/initial_data.hpp"
#include "ks2d/io.hpp"
#include "ks2d/picard.hpp"
#include "ks2d/radius.hpp"
#include "ks2d/stepper.hpp"
#include "ks2d/thresholds.hpp"
#include "ks2d/version.hpp"

namespace ks2d {

enum class Experiment { simulate, picard, complex_shift, modes, thresholds, estimates };

struct ScenarioConfig {
    TorusSpec domain{two_pi, two_pi, 64, 64};
    InitialDataConfig initial_data;
    StepperConfig stepper;
    Experiment experiment = Experiment::simulate;
    double alpha = 1.0;
    std::optional<double> horizon;
    std::array<double, 2> shift_alpha_vec{0.0, 0.0};
    int shift_levels = 10;
    int shift_store_every = 20;
    int picard_max_iters = 25;
    double picard_tol = 1e-12;
    std::optional<double> monitor_cap;
    std::string out_dir = "out";
    std::string csv_path = "norms.csv";
    int spectra_every = 0;  // 0: no snapshots
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const char* kind_name(DataKind k) {
    switch (k) {
        case DataKind::zero: return "zero";
        case DataKind::single_mode: return "single_mode";
        case DataKind::random_envelope: return "random_envelope";
        case DataKind::file: return "file";
    }
    return "?";
}

inline DataKind parse_kind(const std::string& s) {
    if (s == "zero") return DataKind::zero;
    if (s == "single_mode") return DataKind::single_mode;
    if (s == "random_envelope") return DataKind::random_envelope;
    if (s == "file") return DataKind::file;
    throw ConfigError("unknown initial_data.kind: " + s);
}

inline const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::simulate: return "simulate";
        case Experiment::picard: return "picard";
        case Experiment::complex_shift: return "complex_shift";
        case Experiment::modes: return "modes";
        case Experiment::thresholds: return "thresholds";
        case Experiment::estimates: return "estimates";
    }
    return "?";
}

inline Experiment parse_experiment(const std::string& s) {
    if (s == "simulate") return Experiment::simulate;
    if (s == "picard") return Experiment::picard;
    if (s == "complex_shift" || s == "complex-shift") return Experiment::complex_shift;
    if (s == "modes") return Experiment::modes;
    if (s == "thresholds") return Experiment::thresholds;
    if (s == "estimates") return Experiment::estimates;
    throw ConfigError("unknown experiment: " + s);
}

inline std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace detail

inline json to_json(const ScenarioConfig& c) {
    json j;
    j["schema"] = 1;
    j["domain"] = {{"L1", c.domain.L1}, {"L2", c.domain.L2}, {"N1", c.domain.N1},
                   {"N2", c.domain.N2}};
    json id;
    id["kind"] = detail::kind_name(c.initial_data.kind);
    id["amplitude"] = c.initial_data.amplitude;
    id["spectral_exponent"] = c.initial_data.spectral_exponent;
    id["seed"] = c.initial_data.seed;
    id["zero_mean"] = c.initial_data.zero_mean;
    id["gradient"] = c.initial_data.gradient;
    id["mode"] = {c.initial_data.mode[0], c.initial_data.mode[1]};
    if (!c.initial_data.path.empty()) id["path"] = c.initial_data.path;
    if (c.initial_data.target != TargetNorm::none) {
        id["target_norm"] = c.initial_data.target == TargetNorm::wiener0 ? "wiener0" : "l2";
        id["target_value"] = c.initial_data.target_value;
    }
    j["initial_data"] = std::move(id);
    j["stepper"] = {{"dt", c.stepper.dt},
                    {"T", c.stepper.T},
                    {"scheme", "IFRK4"},
                    {"dealias", c.stepper.dealias == DealiasMode::two_thirds ? "two_thirds"
                                                                             : "none"}};
    j["experiment"] = detail::experiment_name(c.experiment);
    j["alpha"] = c.alpha;
    if (c.horizon) j["horizon"] = *c.horizon;
    j["complex_shift"] = {{"alpha_vec", {c.shift_alpha_vec[0], c.shift_alpha_vec[1]}},
                          {"levels", c.shift_levels},
                          {"store_every", c.shift_store_every}};
    j["picard"] = {{"max_iters", c.picard_max_iters}, {"tol", c.picard_tol}};
    if (c.monitor_cap) j["monitor_cap"] = *c.monitor_cap;
    j["outputs"] = {{"dir", c.out_dir}, {"csv_path", c.csv_path}, {"spectra_every", c.spectra_every}};
    return j;
}

inline ScenarioConfig scenario_from_json(const json& j) {
    ScenarioConfig c;
    try {
        if (j.contains("schema") && j.at("schema").get<int>() != 1)
            throw ConfigError("unsupported config schema");
        if (j.contains("domain")) {
            const auto& d = j.at("domain");
            c.domain = TorusSpec(d.value("L1", two_pi), d.value("L2", two_pi), d.value("N1", 64),
                                 d.value("N2", 64));
        }
        if (j.contains("initial_data")) {
            const auto& d = j.at("initial_data");
            c.initial_data.kind = detail::parse_kind(d.value("kind", "zero"));
            c.initial_data.amplitude = d.value("amplitude", 0.0);
            c.initial_data.spectral_exponent = d.value("spectral_exponent", 2.0);
            c.initial_data.seed = d.value("seed", std::uint64_t(0));
            c.initial_data.zero_mean = d.value("zero_mean", true);
            c.initial_data.gradient = d.value("gradient", true);
            if (d.contains("mode")) {
                c.initial_data.mode = {d.at("mode").at(0).get<int>(),
                                       d.at("mode").at(1).get<int>()};
            }
            c.initial_data.path = d.value("path", std::string{});
            const std::string tn = d.value("target_norm", "none");
            if (tn == "wiener0")
                c.initial_data.target = TargetNorm::wiener0;
            else if (tn == "l2")
                c.initial_data.target = TargetNorm::l2;
            else if (tn != "none")
                throw ConfigError("unknown initial_data.target_norm: " + tn);
            c.initial_data.target_value = d.value("target_value", 0.0);
        }
        if (j.contains("stepper")) {
            const auto& d = j.at("stepper");
            c.stepper.dt = d.value("dt", 1e-3);
            c.stepper.T = d.value("T", 1.0);
            const std::string dealias = d.value("dealias", "two_thirds");
            if (dealias == "two_thirds")
                c.stepper.dealias = DealiasMode::two_thirds;
            else if (dealias == "none")
                c.stepper.dealias = DealiasMode::none;
            else
                throw ConfigError("unknown stepper.dealias: " + dealias);
            const std::string scheme = d.value("scheme", "IFRK4");
            if (scheme != "IFRK4") throw ConfigError("unknown stepper.scheme: " + scheme);
            c.stepper.validate();
        }
        if (j.contains("experiment"))
            c.experiment = detail::parse_experiment(j.at("experiment").get<std::string>());
        c.alpha = j.value("alpha", 1.0);
        if (j.contains("horizon") && !j.at("horizon").is_null())
            c.horizon = j.at("horizon").get<double>();
        if (j.contains("complex_shift")) {
            const auto& d = j.at("complex_shift");
            if (d.contains("alpha_vec"))
                c.shift_alpha_vec = {d.at("alpha_vec").at(0).get<double>(),
                                     d.at("alpha_vec").at(1).get<double>()};
            c.shift_levels = d.value("levels", 10);
            c.shift_store_every = d.value("store_every", 20);
        }
        if (j.contains("picard")) {
            c.picard_max_iters = j.at("picard").value("max_iters", 25);
            c.picard_tol = j.at("picard").value("tol", 1e-12);
        }
        if (j.contains("monitor_cap") && !j.at("monitor_cap").is_null())
            c.monitor_cap = j.at("monitor_cap").get<double>();
        if (j.contains("outputs")) {
            const auto& d = j.at("outputs");
            c.out_dir = d.value("dir", std::string("out"));
            c.csv_path = d.value("csv_path", std::string("norms.csv"));
            c.spectra_every = d.value("spectra_every", 0);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return c;
}

struct RunOutcome {
    int exit_code = 0;
    json manifest;
    std::string manifest_path;
};

// Executes one scenario end to end and writes its manifest.  Exit codes:
// 0 success, 2 invalid configuration, 3 numerical blow-up (SUSPECT verdict).
inline RunOutcome run_scenario(const ScenarioConfig& cfg, std::ostream& log = std::cout) {
    namespace fs = std::filesystem;
    RunOutcome outcome;
    json manifest;
    manifest["schema"] = 1;
    manifest["code_version"] = version_string;
    const json config_json = to_json(cfg);
    manifest["config"] = config_json;
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_json.dump())));
    manifest["config_hash"] = hash_hex;
    manifest["started"] = detail::iso_utc_now();

    std::vector<std::string> output_files;
    json verdicts;

    try {
        fs::create_directories(cfg.out_dir);
        auto out_path = [&](const std::string& name) { return (fs::path(cfg.out_dir) / name).string(); };

        SpectralField u0(cfg.domain);
        if (cfg.experiment != Experiment::modes && cfg.experiment != Experiment::thresholds) {
            if (cfg.initial_data.kind == DataKind::file) {
                std::ifstream in(cfg.initial_data.path, std::ios::binary);
                if (!in) throw ConfigError("cannot open spectra file: " + cfg.initial_data.path);
                SpectraFile loaded = read_spectra(in);
                if (!loaded.field.spec.same_grid(cfg.domain))
                    throw ConfigError("spectra file grid mismatch");
                u0 = std::move(loaded.field);
                if (cfg.initial_data.zero_mean) u0.remove_mean();
            } else {
                u0 = make_initial_data(cfg.domain, cfg.initial_data);
            }
        }

        switch (cfg.experiment) {
            case Experiment::modes: {
                const SymbolTable table = build_symbol_table(cfg.domain);
                const std::string csv = out_path("modes.csv");
                std::ofstream os(csv);
                write_symbol_csv(table, os);
                output_files.push_back(csv);
                log << "growing modes: " << table.growing.size() << "\n";
                for (const auto& k : table.growing)
                    log << "  k=(" << k[0] << "," << k[1]
                        << ")  sigma=" << table.sigma_of(k[0], k[1]) << "\n";
                log << "A=" << table.A << (table.has_gap ? "" : "  (no gap)") << "\n";
                verdicts["modes"] = int(table.growing.size());
                verdicts["A"] = table.A;
                verdicts["has_gap"] = table.has_gap;
                break;
            }
            case Experiment::simulate: {
                NormSeries series;
                IntegrationOptions opts;
                const long long steps = std::llround(cfg.stepper.T / cfg.stepper.dt);
                opts.store_every = std::max(1, int(steps / 32));  // norms track every step
                std::vector<std::string> snapshots;
                opts.observer = [&](std::size_t step, double t, const SpectralField& f) {
                    series.times.push_back(t);
                    series.l2.push_back(l2_norm(f));
                    series.h1dot.push_back(h1dot_norm(f));
                    series.wiener0.push_back(wiener_norm(f, 0.0));
                    auto fit = try_analyticity_radius_estimate(f);
                    series.rho_est.push_back(fit ? fit->rho_est
                                                 : std::numeric_limits<double>::quiet_NaN());
                    if (cfg.spectra_every > 0 && step % std::size_t(cfg.spectra_every) == 0) {
                        char name[64];
                        std::snprintf(name, sizeof(name), "spectra_%08zu.bin", step);
                        const std::string path = out_path(name);
                        std::ofstream os(path, std::ios::binary);
                        write_spectra(f, t, os);
                        snapshots.push_back(path);
                    }
                };
                const IntegrationResult result = integrate(u0, cfg.stepper, opts);

                const std::string csv = out_path(cfg.csv_path);
                {
                    std::ofstream os(csv);
                    write_norm_series_csv(series, os);
                }
                output_files.push_back(csv);
                for (auto& s : snapshots) output_files.push_back(s);

                double sup = 0.0;
                for (double v : series.l2) sup = std::max(sup, v);
                const double cap = cfg.monitor_cap.value_or(std::max(sup, 1e-300));
                const MonitorReport mon = continuation_monitor(sup, result.blowup_time, cap);
                verdicts["monitor"] = to_string(mon.verdict);
                verdicts["sup_l2"] = mon.sup_l2;
                if (mon.verdict == Verdict::Continue) verdicts["t0_suggest"] = mon.t0_suggest;
                if (result.blew_up()) {
                    verdicts["blowup_time"] = *result.blowup_time;
                    log << "blow-up suspected at t=" << *result.blowup_time << "\n";
                    outcome.exit_code = 3;
                } else {
                    log << "simulate: " << result.steps_taken << " steps, sup_l2=" << sup << "\n";
                }
                break;
            }
            case Experiment::picard: {
                PicardOptions popts;
                popts.dt = cfg.stepper.dt;
                popts.T = cfg.stepper.T;
                popts.max_iters = cfg.picard_max_iters;
                popts.tol = cfg.picard_tol;
                popts.dealias = cfg.stepper.dealias;
                const PicardResult result = picard_mild_solve(u0, cfg.alpha, cfg.horizon, popts);

                const std::string jpath = out_path("picard.json");
                {
                    std::ofstream os(jpath);
                    os << to_json(result.report).dump(2) << "\n";
                }
                output_files.push_back(jpath);

                NormSeries series;
                for (std::size_t n = 0; n < result.trajectory.size(); ++n) {
                    const auto& f = result.trajectory.fields[n];
                    series.times.push_back(result.trajectory.times[n]);
                    series.l2.push_back(l2_norm(f));
                    series.h1dot.push_back(h1dot_norm(f));
                    series.wiener0.push_back(wiener_norm(f, 0.0));
                    auto fit = try_analyticity_radius_estimate(f);
                    series.rho_est.push_back(fit ? fit->rho_est
                                                 : std::numeric_limits<double>::quiet_NaN());
                }
                const std::string csv = out_path(cfg.csv_path);
                {
                    std::ofstream os(csv);
                    write_norm_series_csv(series, os);
                }
                output_files.push_back(csv);

                verdicts["picard"] = result.report.converged
                                         ? "CONVERGED"
                                         : (result.report.diverged ? "DIVERGED" : "MAX_ITERS");
                log << "picard: iterates=" << result.report.iterates
                    << " converged=" << result.report.converged << "\n";
                break;
            }
            case Experiment::complex_shift: {
                ComplexShiftOptions sopts;
                sopts.dt = cfg.stepper.dt;
                sopts.dealias = cfg.stepper.dealias;
                sopts.store_every = cfg.shift_store_every;
                const ComplexShiftResult result = complex_shift_solve(
                    u0, cfg.shift_alpha_vec, cfg.stepper.T, cfg.shift_levels, sopts);

                json j;
                j["alpha_vec"] = {result.alpha_vec[0], result.alpha_vec[1]};
                j["sup_norms"] = result.sup_norms;
                if (result.blew_up()) {
                    j["blowup_level"] = *result.blowup_level;
                    j["blowup_time"] = *result.blowup_time;
                }
                const std::string jpath = out_path("complex_shift.json");
                {
                    std::ofstream os(jpath);
                    os << j.dump(2) << "\n";
                }
                output_files.push_back(jpath);

                verdicts["complex_shift"] = result.blew_up() ? "SUSPECT" : "OK";
                if (result.blew_up()) {
                    log << "blow-up suspected at level " << *result.blowup_level
                        << ", t=" << *result.blowup_time << "\n";
                    outcome.exit_code = 3;
                } else {
                    log << "complex_shift: " << result.sup_norms.size() << " levels\n";
                }
                break;
            }
            case Experiment::thresholds: {
                std::optional<double> M;
                if (cfg.initial_data.kind != DataKind::zero) {
                    const double l2 = l2_norm(u0);
                    if (l2 > 0.0) M = l2;
                }
                const ThresholdReport rep = thresholds(cfg.domain, cfg.alpha, cfg.horizon, M);
                const std::string jpath = out_path("thresholds.json");
                {
                    std::ofstream os(jpath);
                    os << to_json(rep).dump(2) << "\n";
                }
                output_files.push_back(jpath);
                verdicts["r1"] = rep.r1;
                log << "thresholds: r1=" << rep.r1 << " r=" << rep.r << "\n";
                break;
            }
            case Experiment::estimates: {
                json j;
                const OperatorNormReport rep = i_norm_bound(cfg.domain, cfg.alpha, cfg.horizon);
                j["operator_norms"] = to_json(rep);
                json checks = json::array();
                for (auto [s, r] : {std::pair{1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}}) {
                    for (double t : {0.01, 0.1, 1.0}) {
                        const SmoothingCheck chk = smoothing_check(cfg.domain, t, s, r);
                        checks.push_back({{"t", chk.t},
                                          {"s", chk.s},
                                          {"r", chk.r},
                                          {"measured_sup", chk.measured_sup},
                                          {"bound", chk.bound},
                                          {"constant", chk.constant},
                                          {"ratio", chk.ratio()}});
                    }
                }
                j["smoothing_checks"] = std::move(checks);
                auto fit = try_analyticity_radius_estimate(u0);
                if (fit) {
                    j["rho_est"] = fit->rho_est;
                    j["fit_quality"] = fit->r_squared;
                } else {
                    j["rho_est"] = nullptr;
                }
                const std::string jpath = out_path("estimates.json");
                {
                    std::ofstream os(jpath);
                    os << j.dump(2) << "\n";
                }
                output_files.push_back(jpath);
                verdicts["estimates"] = "OK";
                break;
            }
        }
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        outcome.exit_code = 2;
        verdicts["error"] = e.what();
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        outcome.exit_code = 2;
        verdicts["error"] = e.what();
    }

    manifest["verdicts"] = verdicts;
    json outs = json::array();
    for (const auto& path : output_files) {
        std::error_code ec;
        const auto bytes = std::filesystem::file_size(path, ec);
        outs.push_back({{"path", path}, {"bytes", ec ? 0 : std::uintmax_t(bytes)}});
    }
    manifest["outputs"] = std::move(outs);
    manifest["finished"] = detail::iso_utc_now();

    if (outcome.exit_code != 2) {
        namespace fs = std::filesystem;
        const std::string mpath = (fs::path(cfg.out_dir) / "manifest.json").string();
        std::ofstream os(mpath);
        os << manifest.dump(2) << "\n";
        outcome.manifest_path = mpath;
    }
    outcome.manifest = std::move(manifest);
    return outcome;
}

// Independent scenarios may run concurrently; KS2D_THREADS caps the worker
// count.  A single scenario stays sequential end to end.
inline int run_batch(const std::vector<ScenarioConfig>& configs, std::ostream& log = std::cout) {
    std::size_t threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("KS2D_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) threads = std::size_t(v);
    }
    threads = std::min(threads, configs.size());
    if (threads == 0) threads = 1;

    std::vector<int> codes(configs.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            std::ostringstream local;
            codes[i] = run_scenario(configs[i], local).exit_code;
            static std::mutex log_mutex;
            std::lock_guard<std::mutex> lock(log_mutex);
            log << local.str();
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    int rc = 0;
    for (int c : codes) rc = std::max(rc, c);
    return rc;
}

}  // namespace ks2d
