#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ks2d/ks2d.hpp"

namespace {

struct Flags {
    double L1 = ks2d::two_pi, L2 = ks2d::two_pi;
    int N1 = 64, N2 = 64;
    std::string kind = "zero";
    double amplitude = 0.0;
    double spectral_exponent = 2.0;
    std::uint64_t seed = 0;
    bool no_zero_mean = false;
    bool no_gradient = false;
    std::vector<int> mode{1, 0};
    std::string data_path;
    std::string target_norm = "none";
    double target_value = 0.0;
    double dt = 1e-3;
    double T = 1.0;
    std::string dealias = "two_thirds";
    double alpha = 1.0;
    double horizon = -1.0;  // <= 0: infinite horizon
    std::vector<double> alpha_vec{0.0, 0.0};
    int levels = 10;
    int store_every = 20;
    int max_iters = 25;
    double tol = 1e-12;
    double monitor_cap = -1.0;
    std::string out_dir = "out";
    std::string csv_path = "norms.csv";
    int spectra_every = 0;
    std::string config_path;
};

void add_common_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--L1", f.L1, "period in x");
    cmd->add_option("--L2", f.L2, "period in y");
    cmd->add_option("--N1", f.N1, "modes in x (even)");
    cmd->add_option("--N2", f.N2, "modes in y (even)");
    cmd->add_option("--kind", f.kind, "initial data: zero|single_mode|random_envelope|file");
    cmd->add_option("--amplitude", f.amplitude, "initial data amplitude");
    cmd->add_option("--p", f.spectral_exponent, "spectral envelope exponent");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_flag("--no-zero-mean", f.no_zero_mean, "keep the mean mode");
    cmd->add_flag("--no-gradient", f.no_gradient, "independent components instead of grad(phi)");
    cmd->add_option("--mode", f.mode, "lattice index for single_mode data")->expected(2);
    cmd->add_option("--data-file", f.data_path, "spectra file for kind=file");
    cmd->add_option("--target-norm", f.target_norm, "rescale data: none|wiener0|l2");
    cmd->add_option("--target-value", f.target_value, "target norm value");
    cmd->add_option("--dt", f.dt, "time step");
    cmd->add_option("--T", f.T, "final time / grid horizon");
    cmd->add_option("--dealias", f.dealias, "two_thirds|none");
    cmd->add_option("--alpha", f.alpha, "weight rate alpha");
    cmd->add_option("--horizon", f.horizon, "finite horizon (<=0: infinite)");
    cmd->add_option("--alpha-vec", f.alpha_vec, "imaginary shift velocity")->expected(2);
    cmd->add_option("--levels", f.levels, "hierarchy levels");
    cmd->add_option("--store-every", f.store_every, "level snapshot stride");
    cmd->add_option("--max-iters", f.max_iters, "fixed-point iteration cap");
    cmd->add_option("--tol", f.tol, "fixed-point residual tolerance");
    cmd->add_option("--M-cap", f.monitor_cap, "continuation monitor cap (<=0: measured sup)");
    cmd->add_option("--out-dir", f.out_dir, "output directory");
    cmd->add_option("--csv", f.csv_path, "norm series CSV name");
    cmd->add_option("--spectra-every", f.spectra_every, "snapshot stride (0: off)");
    cmd->add_option("--config", f.config_path, "JSON config; overrides flags");
}

ks2d::ScenarioConfig config_from_flags(const Flags& f, ks2d::Experiment exp) {
    ks2d::ScenarioConfig c;
    c.domain = ks2d::TorusSpec(f.L1, f.L2, f.N1, f.N2);
    c.initial_data.kind = ks2d::detail::parse_kind(f.kind);
    c.initial_data.amplitude = f.amplitude;
    c.initial_data.spectral_exponent = f.spectral_exponent;
    c.initial_data.seed = f.seed;
    c.initial_data.zero_mean = !f.no_zero_mean;
    c.initial_data.gradient = !f.no_gradient;
    c.initial_data.mode = {f.mode[0], f.mode[1]};
    c.initial_data.path = f.data_path;
    if (f.target_norm == "wiener0")
        c.initial_data.target = ks2d::TargetNorm::wiener0;
    else if (f.target_norm == "l2")
        c.initial_data.target = ks2d::TargetNorm::l2;
    else if (f.target_norm != "none")
        throw ks2d::ConfigError("unknown --target-norm: " + f.target_norm);
    c.initial_data.target_value = f.target_value;
    c.stepper.dt = f.dt;
    c.stepper.T = f.T;
    if (f.dealias == "two_thirds")
        c.stepper.dealias = ks2d::DealiasMode::two_thirds;
    else if (f.dealias == "none")
        c.stepper.dealias = ks2d::DealiasMode::none;
    else
        throw ks2d::ConfigError("unknown --dealias: " + f.dealias);
    c.stepper.validate();
    c.experiment = exp;
    c.alpha = f.alpha;
    if (f.horizon > 0.0) c.horizon = f.horizon;
    c.shift_alpha_vec = {f.alpha_vec[0], f.alpha_vec[1]};
    c.shift_levels = f.levels;
    c.shift_store_every = f.store_every;
    c.picard_max_iters = f.max_iters;
    c.picard_tol = f.tol;
    if (f.monitor_cap > 0.0) c.monitor_cap = f.monitor_cap;
    c.out_dir = f.out_dir;
    c.csv_path = f.csv_path;
    c.spectra_every = f.spectra_every;
    return c;
}

ks2d::ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ks2d::ConfigError("cannot open config file: " + path);
    ks2d::json j;
    in >> j;
    return ks2d::scenario_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D Kuramoto-Sivashinsky spectral laboratory"};
    app.require_subcommand(0, 1);
    app.set_version_flag("--version", ks2d::version_string);

    Flags flags;
    struct Sub {
        const char* name;
        const char* desc;
        ks2d::Experiment exp;
    };
    const Sub subs[] = {
        {"modes", "growing-mode census and symbol table", ks2d::Experiment::modes},
        {"simulate", "integrate the 2DKS system", ks2d::Experiment::simulate},
        {"picard", "mild-solution fixed-point iteration", ks2d::Experiment::picard},
        {"complex-shift", "complexified hierarchy along y = alpha*t",
         ks2d::Experiment::complex_shift},
        {"thresholds", "contraction thresholds and strip tabulation",
         ks2d::Experiment::thresholds},
        {"estimates", "operator-norm, smoothing and radius reports", ks2d::Experiment::estimates},
    };
    for (const auto& s : subs) add_common_options(app.add_subcommand(s.name, s.desc), flags);

    auto* batch = app.add_subcommand("batch", "run several JSON configs, possibly in parallel");
    std::vector<std::string> batch_files;
    batch->add_option("configs", batch_files, "config files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (batch->parsed()) {
            std::vector<ks2d::ScenarioConfig> configs;
            for (const auto& p : batch_files) configs.push_back(load_config_file(p));
            return ks2d::run_batch(configs);
        }
        for (const auto& s : subs) {
            if (app.get_subcommand(s.name)->parsed()) {
                // a config file wins over individual flags
                ks2d::ScenarioConfig cfg = flags.config_path.empty()
                                               ? config_from_flags(flags, s.exp)
                                               : load_config_file(flags.config_path);
                return ks2d::run_scenario(cfg).exit_code;
            }
        }
        std::cout << app.help();
        return 0;
    } catch (const ks2d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ks2d::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
