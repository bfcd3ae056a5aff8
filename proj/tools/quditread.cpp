// quditread: transmon-qudit readout simulation and inference CLI.
//
// Subcommands: spectrum, shifts, readout-sweep, assignment, infer,
// strategy-compare, catalog. File frequencies are GHz (converted to rad/s
// internally); every run writes a manifest with the config hash and seed so
// stochastic outputs can be reproduced byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qudit/assignment.hpp"
#include "qudit/config.hpp"
#include "qudit/dispersive.hpp"
#include "qudit/inference.hpp"
#include "qudit/io.hpp"
#include "qudit/readout.hpp"
#include "qudit/spectrum.hpp"
#include "qudit/strategies.hpp"
#include "qudit/units.hpp"

using namespace qudit;
using cd = std::complex<double>;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::vector<std::string> raw_args;

    RunConfig config() const {
        return config_path.empty() ? RunConfig{} : load_config(config_path);
    }

    EmitOptions emit_opts(const std::string& command, bool stochastic) const {
        EmitOptions opts;
        opts.out_dir = out_dir;
        opts.format = parse_format(format);
        opts.command = command;
        // The hash covers everything that determines the results; the output
        // location is environmental and stays out of it.
        std::string payload;
        for (std::size_t i = 0; i < raw_args.size(); ++i) {
            if (raw_args[i] == "--out-dir") {
                ++i;
                continue;
            }
            payload += raw_args[i] + "\x1f";
        }
        if (!config_path.empty()) payload += read_file(config_path);
        opts.config_hash = fnv1a64_hex(payload);
        if (stochastic) {
            if (!seed) throw ValidationError("seed", "required for stochastic runs");
            opts.seed = *seed;
            opts.has_seed = true;
        }
        return opts;
    }
};

// Spectrum source shared by several subcommands: either E_J/E_C directly
// (optionally with E_C for absolute units) or a (omega01, alpha1) fit.
struct SpectrumSource {
    std::optional<double> ej_over_ec;
    std::optional<double> ec_ghz;
    std::optional<double> omega01_ghz;
    std::optional<double> alpha1_ghz;

    void add_flags(CLI::App* app) {
        app->add_option("--ej-ec", ej_over_ec, "E_J/E_C ratio");
        app->add_option("--ec-ghz", ec_ghz, "E_C in GHz (absolute units)");
        app->add_option("--omega01-ghz", omega01_ghz, "qubit frequency in GHz");
        app->add_option("--alpha1-ghz", alpha1_ghz, "anharmonicity in GHz (negative)");
    }

    void load(const RunConfig& cfg, const std::string& section) {
        if (!ej_over_ec && cfg.has(section, "ej_over_ec"))
            ej_over_ec = cfg.get_double(section, "ej_over_ec");
        if (!ec_ghz && cfg.has(section, "ec_ghz")) ec_ghz = cfg.get_double(section, "ec_ghz");
        if (!omega01_ghz && cfg.has(section, "omega01_ghz"))
            omega01_ghz = cfg.get_double(section, "omega01_ghz");
        if (!alpha1_ghz && cfg.has(section, "alpha1_ghz"))
            alpha1_ghz = cfg.get_double(section, "alpha1_ghz");
    }

    TransmonParams params() const {
        TransmonParams p;
        if (omega01_ghz || alpha1_ghz) {
            if (!omega01_ghz || !alpha1_ghz)
                throw ValidationError("omega01_ghz/alpha1_ghz", "both required for a fit");
            const auto fit = fit_ej_ec(ghz_to_rad(*omega01_ghz), ghz_to_rad(*alpha1_ghz));
            p.ej_over_ec = fit.ej_over_ec;
            p.ec = fit.ec;
        } else if (ej_over_ec) {
            p.ej_over_ec = *ej_over_ec;
            if (ec_ghz) p.ec = ghz_to_rad(*ec_ghz);
        } else {
            throw ValidationError("ej_over_ec", "give --ej-ec or --omega01-ghz/--alpha1-ghz");
        }
        if (!(p.ej_over_ec > 0.0)) throw ValidationError("ej_over_ec", "must be > 0");
        p.validate();
        return p;
    }

    // bare qudit energies (rad/s when absolute units are known, else E_C = 1)
    std::vector<double> levels(int count) const {
        const Spectrum s = Spectrum::compute(params(), count);
        return s.levels_ng0;
    }
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

int run_spectrum(const GlobalOpts& g, const SpectrumSource& src, const std::string& ng_list,
                 int d) {
    const TransmonParams p = src.params();
    const Spectrum s = Spectrum::compute(p, d);
    const double scale = p.ec ? 1.0 / (two_pi * 1e9) : 1.0;
    const std::string unit = p.ec ? "energy_GHz" : "energy_over_EC";

    TransmonParams ref = p;
    ref.n_g = 0.0;
    const double e00 = eigenenergies(ref, 1).front();

    Table levels;
    levels.name = "levels";
    levels.columns = {"n_g", "level_index", unit};
    for (double ng : parse_list(ng_list)) {
        TransmonParams pn = p;
        pn.n_g = ng;
        pn.validate();
        const auto ev = eigenenergies(pn, d);
        for (int j = 0; j < d; ++j)
            levels.add_row({ng, static_cast<long long>(j), (ev[j] - e00) * scale});
    }

    Table derived;
    derived.name = "derived";
    derived.columns = {"i", "j", "omega_ij", "delta_omega_ij", "alpha_j", "epsilon_j"};
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            std::vector<Cell> row{static_cast<long long>(i), static_cast<long long>(j),
                                  transition_frequency(s, i, j) * scale,
                                  frequency_difference(s, i, j) * scale, std::string(""),
                                  std::string("")};
            if (j == i + 1) {
                if (j + 1 < d) row[4] = anharmonicity(s, j) * scale;
                row[5] = charge_dispersion(s, j) * scale;
            }
            derived.add_row(std::move(row));
        }

    emit({levels, derived}, g.emit_opts("spectrum", false));
    return 0;
}

int run_shifts(const GlobalOpts& g, const SpectrumSource& src, double g_ghz, double omega_r_ghz,
               int d, std::optional<double> omega_d_ghz) {
    if (!src.params().ec)
        throw ValidationError("ec_ghz", "shifts needs absolute units (E_C or a fit)");
    const auto levels = src.levels(d + 1);
    const CouplingSpec c{ghz_to_rad(g_ghz), ghz_to_rad(omega_r_ghz)};
    const auto model = DispersiveModel::compute(levels, c, d);

    Table t;
    t.name = "shifts";
    t.columns = {"j", "chi_pair_GHz", "chi_GHz", "omega_tilde_GHz", "f_j_per_GHz"};
    for (int j = 0; j < d; ++j) {
        std::vector<Cell> row{static_cast<long long>(j), rad_to_ghz(model.chi_pair[j]),
                              rad_to_ghz(model.chi[j]), rad_to_ghz(model.omega_tilde[j]),
                              std::string("")};
        if (omega_d_ghz && j + 2 < d) {
            try {
                // f_j carries inverse-frequency units; report it per GHz
                row[4] = two_photon_factor(model.omega_tilde, ghz_to_rad(*omega_d_ghz), j) *
                         ghz_to_rad(1.0);
            } catch (const ResonanceError&) {
                row[4] = std::string("resonant");
            }
        }
        t.add_row(std::move(row));
    }
    emit({t}, g.emit_opts("shifts", false));
    return 0;
}

int run_readout_sweep(const GlobalOpts& g) {
    const RunConfig cfg = g.config();
    if (cfg.sections.empty()) throw ValidationError("config", "readout-sweep needs --config");
    ReadoutConfig rc;
    rc.omega_r = ghz_to_rad(cfg.get_double("readout", "omega_r_ghz"));
    rc.kappa = ghz_to_rad(cfg.get_double("readout", "kappa_ghz"));
    rc.Omega = ghz_to_rad(cfg.get_double("readout", "omega_drive_amp_ghz"));
    rc.phi = cfg.get_double_or("readout", "phi", 0.0);
    rc.T = cfg.get_double("readout", "t_us") * 1e-6;
    rc.validate();
    if (!rc.long_time_limit_ok())
        std::cerr << "warning: kappa*T = " << rc.kappa_t()
                  << " < 5; steady-state formulas are unreliable\n";

    SpectrumSource src;
    src.load(cfg, "device");
    const int d = static_cast<int>(cfg.get_int_or("readout", "d", 4));
    const auto levels = src.levels(d + 1);
    const CouplingSpec c{ghz_to_rad(cfg.get_double("device", "g_ghz")), rc.omega_r};
    const auto model = DispersiveModel::compute(levels, c, d);

    const double lo = cfg.get_double("readout", "grid_lo_ghz");
    const double hi = cfg.get_double("readout", "grid_hi_ghz");
    const int n = static_cast<int>(cfg.get_int_or("readout", "grid_points", 401));
    rc.omega_m = ghz_to_rad(
        cfg.get_double_or("readout", "omega_m_ghz",
                          rad_to_ghz(rc.omega_r + 0.5 * (model.chi[0] + model.chi[1]))));

    Table t;
    t.name = "readout_sweep";
    t.columns = {"omega_d_GHz", "state_j", "re", "im", "frame"};
    for (int k = 0; k < n; ++k) {
        rc.omega_d = ghz_to_rad(lo + (hi - lo) * k / std::max(1, n - 1));
        for (int j = 0; j < d; ++j) {
            const cd ad = steady_amp_drive_frame(rc, model.chi[j]);
            const cd am = steady_amp_general_frame(rc, model.chi[j]);
            t.add_row({rad_to_ghz(rc.omega_d), static_cast<long long>(j), ad.real(), ad.imag(),
                       std::string("drive")});
            t.add_row({rad_to_ghz(rc.omega_d), static_cast<long long>(j), am.real(), am.imag(),
                       std::string("modulation")});
        }
    }
    emit({t}, g.emit_opts("readout-sweep", false));
    return 0;
}

std::vector<cd> load_centers(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty centers file");
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "re" || header[1] != "im")
        throw ParseError(path + ": expected header re,im");
    std::vector<cd> centers;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() < 2)
            throw ParseError(path + ":" + std::to_string(line_no) + ": need re,im");
        centers.emplace_back(std::stod(cells[0]), std::stod(cells[1]));
    }
    return centers;
}

// centers come from a CSV, or from the dispersive model of a configured
// device driven at --omega-d-ghz
std::vector<cd> assignment_centers(const GlobalOpts& g, const std::string& centers_csv,
                                   std::optional<double> omega_d_ghz) {
    if (!centers_csv.empty()) return load_centers(centers_csv);
    const RunConfig cfg = g.config();
    if (cfg.sections.empty() || !omega_d_ghz)
        throw ValidationError("centers", "give --centers-csv, or --config with --omega-d-ghz");
    SpectrumSource src;
    src.load(cfg, "device");
    const int d = static_cast<int>(cfg.get_int_or("device", "d", 4));
    const auto levels = src.levels(d + 1);
    ReadoutConfig rc;
    rc.omega_r = ghz_to_rad(cfg.get_double("device", "omega_r_ghz"));
    rc.kappa = ghz_to_rad(cfg.get_double("device", "kappa_ghz"));
    rc.Omega = ghz_to_rad(cfg.get_double("device", "omega_drive_amp_ghz"));
    rc.phi = cfg.get_double_or("device", "phi", 0.0);
    rc.T = cfg.get_double("device", "t_us") * 1e-6;
    rc.omega_d = ghz_to_rad(*omega_d_ghz);
    rc.validate();
    const CouplingSpec c{ghz_to_rad(cfg.get_double("device", "g_ghz")), rc.omega_r};
    const auto model = DispersiveModel::compute(levels, c, d);
    std::vector<cd> centers;
    for (double chi : model.chi) centers.push_back(steady_amp_drive_frame(rc, chi));
    return centers;
}

int run_assignment(const GlobalOpts& g, const std::string& centers_csv, double sigma,
                   const std::string& method, long long n_samples,
                   std::optional<double> omega_d_ghz) {
    const auto centers = assignment_centers(g, centers_csv, omega_d_ghz);
    std::vector<GaussianCloud> clouds;
    for (const cd& c : centers) clouds.push_back({c, sigma});

    AssignmentMatrix m;
    bool stochastic = false;
    if (method == "owen") {
        m = assignment_matrix_owen(clouds);
    } else if (method == "mc") {
        stochastic = true;
        const auto opts = g.emit_opts("assignment", true); // validates seed presence early
        (void)opts;
        m = assignment_matrix_mc(clouds, n_samples, *g.seed);
    } else {
        throw ValidationError("method", "expected owen or mc");
    }

    Table mt;
    mt.name = "assignment_matrix";
    mt.columns = {"i", "j", "m_ij"};
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            mt.add_row({static_cast<long long>(i), static_cast<long long>(j), m.m(i, j)});

    const auto em = error_measures(m);
    Table xt;
    xt.name = "error_measures";
    xt.columns = {"state_j", "xi_j", "xi_avg"};
    for (int j = 0; j < m.dim(); ++j)
        xt.add_row({static_cast<long long>(j), em.xi[j], em.xi_avg});

    emit({mt, xt}, g.emit_opts("assignment", stochastic));
    return 0;
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(std::stod(c));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": empty matrix");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw ParseError(path + ": ragged matrix rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

int run_infer(const GlobalOpts& g, const std::string& matrix_csv, const std::string& counts_csv,
              int samples) {
    const Eigen::MatrixXd m = load_matrix_csv(matrix_csv);
    std::istringstream in(read_file(counts_csv));
    std::string line;
    PopulationPosterior post;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        CountVector counts;
        for (const auto& c : split_csv_line(line)) counts.counts.push_back(std::stoll(c));
        post.blocks.push_back({m, std::move(counts)});
    }
    post.validate();
    const auto opts = g.emit_opts("infer", true);

    CountVector pooled;
    pooled.counts.assign(post.dim(), 0);
    for (const auto& b : post.blocks)
        for (int j = 0; j < post.dim(); ++j) pooled.counts[j] += b.counts.counts[j];

    nlohmann::json out;
    try {
        const auto mode = posterior_mode(m, pooled);
        out["mode"] = mode.p;
        out["mode_in_simplex"] = mode.in_simplex;
    } catch (const SingularMatrixError& e) {
        out["mode_error"] = e.what();
    }
    out["mitigated"] = mitigate_least_squares(m, pooled);
    const auto sd = posterior_sd(post, samples, *g.seed);
    out["sd"] = sd.sd;
    out["sd_avg"] = sd.sd_avg;
    out["ess"] = sd.ess;
    out["ess_warning"] = sd.ess_warning;
    out["condition_numbers"] = post.condition_numbers();
    out["seed"] = *g.seed;
    if (sd.ess_warning)
        std::cerr << "warning: effective sample size " << sd.ess << " below 5% of " << samples
                  << "\n";

    std::filesystem::create_directories(opts.out_dir);
    std::ofstream jf(std::filesystem::path(opts.out_dir) / "inference_report.json",
                     std::ios::binary);
    jf << out.dump(2) << "\n";

    Table t;
    t.name = "inference";
    t.columns = {"key", "value"};
    t.add_row({std::string("sd_avg"), sd.sd_avg});
    t.add_row({std::string("ess"), sd.ess});
    emit({t}, opts);
    return 0;
}

int run_strategy_compare(const GlobalOpts& g) {
    const RunConfig cfg = g.config();
    if (cfg.sections.empty())
        throw ValidationError("config", "strategy-compare needs --config");
    const auto opts = g.emit_opts("strategy-compare", true);

    SpectrumSource src;
    src.load(cfg, "device");
    const int d = static_cast<int>(cfg.get_int_or("strategy", "d", 4));
    const auto levels = src.levels(d + 1);
    const CouplingSpec c{ghz_to_rad(cfg.get_double("device", "g_ghz")),
                         ghz_to_rad(cfg.get_double("device", "omega_r_ghz"))};
    const auto model = DispersiveModel::compute(levels, c, d);

    StrategyScenario sc;
    sc.chi = model.chi;
    sc.cfg.omega_r = c.omega_r;
    sc.cfg.Omega = ghz_to_rad(cfg.get_double("device", "omega_drive_amp_ghz"));
    sc.cfg.kappa = ghz_to_rad(cfg.get_double("device", "kappa_ghz"));
    sc.cfg.T = cfg.get_double("device", "t_us") * 1e-6;
    sc.cfg.phi = cfg.get_double_or("device", "phi", 0.0);
    sc.cfg.omega_d = c.omega_r;
    sc.cfg.omega_m = c.omega_r;
    sc.shots = cfg.get_int_or("strategy", "shots", 1000);
    sc.p_true.assign(d, 1.0 / d);
    sc.grid_points = static_cast<int>(cfg.get_int_or("strategy", "grid_points", 401));
    sc.sd_samples = static_cast<int>(cfg.get_int_or("strategy", "sd_samples", 20000));
    sc.seed = *g.seed;
    sc.sigma = 1.0; // replaced per grid point

    const auto kappas_ghz = parse_list(cfg.get("strategy", "kappa_grid_ghz"));
    const auto sigmas = parse_list(cfg.get("strategy", "sigma_grid"));
    std::vector<double> kappas;
    for (double k : kappas_ghz) kappas.push_back(ghz_to_rad(k));
    const int seeds = static_cast<int>(cfg.get_int_or("strategy", "seed_count", 8));

    const auto map = sweep_ratio(kappas, sigmas, sc, seeds);
    Table t;
    t.name = "strategy_ratio";
    t.columns = {"kappa_GHz", "sigma", "sd_single", "sd_multi", "ratio", "flagged"};
    for (const auto& pt : map)
        t.add_row({rad_to_ghz(pt.kappa), pt.sigma, pt.sd_single, pt.sd_multi, pt.ratio,
                   static_cast<long long>(pt.flagged ? 1 : 0)});
    emit({t}, opts);
    return 0;
}

int run_catalog(const GlobalOpts& g, const std::string& devices_csv) {
    const auto res = device_catalog(devices_csv);
    for (const auto& err : res.row_errors) std::cerr << "warning: " << err << "\n";
    Table t;
    t.name = "catalog";
    t.columns = {"name", "omega01_GHz", "alpha1_GHz", "omega_r_GHz", "kappa_GHz",
                 "ej_over_ec", "ec_GHz", "epsilon3_GHz"};
    for (const auto& dev : res.devices)
        t.add_row({dev.name, dev.omega01_ghz, dev.alpha1_ghz, dev.omega_r_ghz, dev.kappa_ghz,
                   dev.ej_over_ec, dev.ec_ghz, dev.epsilon3_ghz});
    emit({t}, g.emit_opts("catalog", false));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transmon qudit readout simulation and inference"};
    app.require_subcommand(1);

    GlobalOpts g;
    for (int i = 1; i < argc; ++i) g.raw_args.emplace_back(argv[i]);
    app.add_option("--config", g.config_path, "sectioned key-value config file");
    app.add_option("--out-dir", g.out_dir, "output directory");
    app.add_option("--format", g.format, "csv, json or both");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "master seed for stochastic runs");

    auto* sp = app.add_subcommand("spectrum", "transmon levels and derived frequencies")->fallthrough();
    SpectrumSource sp_src;
    sp_src.add_flags(sp);
    std::string ng_list = "0,0.5";
    int sp_d = 5;
    sp->add_option("--ng", ng_list, "comma-separated offset charges");
    sp->add_option("--d", sp_d, "number of retained levels");

    auto* sh = app.add_subcommand("shifts", "dispersive shifts and dressed frequencies")->fallthrough();
    SpectrumSource sh_src;
    sh_src.add_flags(sh);
    double sh_g = 0.1, sh_wr = 7.25;
    int sh_d = 4;
    std::optional<double> sh_wd;
    sh->add_option("--g-ghz", sh_g, "coupling g in GHz")->required();
    sh->add_option("--omega-r-ghz", sh_wr, "resonator frequency in GHz")->required();
    sh->add_option("--d", sh_d, "number of states");
    sh->add_option("--omega-d-ghz", sh_wd, "qudit drive frequency for f_j");

    auto* rs = app.add_subcommand("readout-sweep", "state amplitudes over a drive grid")->fallthrough();

    auto* as = app.add_subcommand("assignment", "assignment matrix from cloud centers")->fallthrough();
    std::string as_centers, as_method = "owen";
    double as_sigma = 1.0;
    long long as_samples = 100000;
    std::optional<double> as_omega_d;
    as->add_option("--centers-csv", as_centers, "CSV with header re,im");
    as->add_option("--omega-d-ghz", as_omega_d,
                   "drive frequency for centers generated from --config");
    as->add_option("--sigma", as_sigma, "cloud standard deviation")->required();
    as->add_option("--method", as_method, "owen or mc");
    as->add_option("--n-samples", as_samples, "MC samples per prepared state");

    auto* in = app.add_subcommand("infer", "population inference from counts")->fallthrough();
    std::string in_matrix, in_counts;
    int in_samples = 20000;
    in->add_option("--matrix-csv", in_matrix, "assignment matrix CSV")->required();
    in->add_option("--counts-csv", in_counts, "counts CSV, one row per frequency block")
        ->required();
    in->add_option("--samples", in_samples, "importance samples");

    auto* st = app.add_subcommand("strategy-compare", "single vs multifrequency sweep")->fallthrough();

    auto* ca = app.add_subcommand("catalog", "derive E_J/E_C and dispersion per device")->fallthrough();
    std::string ca_devices;
    ca->add_option("--devices-csv", ca_devices, "device list CSV")->required();

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) g.seed = seed_value;

    try {
        const RunConfig file_cfg = g.config();
        if (sp->parsed()) {
            sp_src.load(file_cfg, "spectrum");
            return run_spectrum(g, sp_src, ng_list, sp_d);
        }
        if (sh->parsed()) {
            sh_src.load(file_cfg, "device");
            return run_shifts(g, sh_src, sh_g, sh_wr, sh_d, sh_wd);
        }
        if (rs->parsed()) return run_readout_sweep(g);
        if (as->parsed())
            return run_assignment(g, as_centers, as_sigma, as_method, as_samples, as_omega_d);
        if (in->parsed()) return run_infer(g, in_matrix, in_counts, in_samples);
        if (st->parsed()) return run_strategy_compare(g);
        if (ca->parsed()) return run_catalog(g, ca_devices);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
