#include "maxlab/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "maxlab/compat.hpp"
#include "maxlab/cylinder.hpp"
#include "maxlab/diagnostics.hpp"
#include "maxlab/envelope.hpp"
#include "maxlab/io.hpp"
#include "maxlab/presets.hpp"
#include "maxlab/strichartz.hpp"
#include "maxlab/symbols.hpp"

namespace maxlab {

namespace fs = std::filesystem;

const std::set<std::string>& config_schema() {
    static const std::set<std::string> schema = {
        "grid.dim", "grid.n", "grid.length",
        "run.T", "run.cfl", "run.dt", "run.integrator", "run.sample_every", "run.snapshot_every",
        "coefficients.preset", "coefficients.contrast",
        "initial.preset", "initial.amplitude", "initial.band", "initial.seed",
        "report.sobolev_s", "report.lq",
        "tolerances.parity", "tolerances.charge", "tolerances.energy",
        "symbols.lambdas", "symbols.samples", "symbols.random_checks", "symbols.tolerance",
        "helmholtz.fields", "helmholtz.s_list", "helmholtz.band",
        "envelopes.s", "envelopes.delta", "envelopes.ladder", "envelopes.fields",
        "compat.order",
        "sweep.pq", "sweep.lambdas", "sweep.points_per_lambda", "sweep.seeds", "sweep.T",
        "cyl.n", "cyl.length", "cyl.plateau_radius", "cyl.sigma", "cyl.check_radius",
    };
    return schema;
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

void log_line(const CliOptions& opts, const std::string& msg) {
    if (opts.verbosity > 0) std::cerr << "[maxlab] " << msg << "\n";
}

fs::path prepare_out_dir(const CliOptions& opts) {
    const fs::path dir(opts.out_dir);
    if (fs::exists(dir)) {
        if (!opts.force && !fs::is_empty(dir))
            throw ConfigError("output directory '" + opts.out_dir + "' is not empty (use --force)");
    } else {
        fs::create_directories(dir);
    }
    return dir;
}

TorusGrid grid_from_config(const Config& cfg, int default_dim, int default_n) {
    const int dim = cfg.get("grid.dim", default_dim);
    const int n = cfg.get("grid.n", default_n);
    const double length = cfg.get("grid.length", double(2.0 * EIGEN_PI));
    return TorusGrid::square(dim, n, length);
}

EvolutionConfig evolution_from_config(const Config& cfg) {
    EvolutionConfig e;
    e.T = cfg.get("run.T", 1.0);
    e.cfl = cfg.get("run.cfl", 0.4);
    if (cfg.has("run.dt")) e.dt_override = cfg.get("run.dt", 0.0);
    const std::string integrator = cfg.get("run.integrator", std::string("leapfrog"));
    if (integrator == "leapfrog") {
        e.integrator = EvolutionConfig::Integrator::Leapfrog;
    } else if (integrator == "rk4") {
        e.integrator = EvolutionConfig::Integrator::Rk4;
    } else {
        throw ConfigError("run.integrator must be leapfrog or rk4");
    }
    e.sample_every = cfg.get("run.sample_every", 1);
    return e;
}

InitialPreset initial_from_config(const Config& cfg, const CliOptions& opts) {
    InitialPreset p;
    p.name = cfg.get("initial.preset", std::string("standing-wave"));
    p.amplitude = cfg.get("initial.amplitude", 1.0);
    p.band = cfg.get("initial.band", 4.0);
    p.seed = static_cast<std::uint64_t>(cfg.get("initial.seed", 1LL));
    if (opts.seed >= 0) p.seed = static_cast<std::uint64_t>(opts.seed);
    return p;
}

void write_report(const fs::path& dir, const Config& cfg, const RunHistory& hist,
                  const CoefficientSet* coeffs, Manifest& manifest) {
    NormReport report;
    const std::vector<double> s_list = cfg.get_list("report.sobolev_s", {0.0, 1.0, 2.0});
    const std::vector<double> q_list = cfg.get_list("report.lq", {2.0, 4.0});
    for (size_t i = 0; i < hist.times.size(); ++i) {
        const double t = hist.times[i];
        report.record(t, "energy", hist.energy[i]);
        report.record(t, "energy_m", hist.energy_m[i]);
        report.record(t, "charge_l2", hist.charge_l2[i]);
        if (!hist.states.empty()) {
            const FieldState& s = hist.states[i];
            report.record(t, "parity_defect", parity_defect(s));
            for (double sv : s_list) {
                char key[32];
                std::snprintf(key, sizeof(key), "H%g", sv);
                report.record(t, key, sobolev_norm(s, sv));
            }
            for (double qv : q_list) {
                char key[32];
                std::snprintf(key, sizeof(key), "L%g", qv);
                report.record(t, key, lq_norm(s, qv));
            }
        }
    }
    (void)coeffs;
    const fs::path csv = dir / "report.csv";
    report.write_csv(csv.string());
    manifest.add_output(csv.string(), "report.csv");
}

void write_snapshots(const fs::path& dir, const Config& cfg, const RunHistory& hist, Manifest& manifest) {
    const int every = cfg.get("run.snapshot_every", 0);
    if (hist.states.empty()) return;
    fs::create_directories(dir / "snapshots");
    std::vector<size_t> picks;
    if (every <= 0) {
        picks = {0, hist.states.size() - 1};
    } else {
        for (size_t i = 0; i < hist.states.size(); i += static_cast<size_t>(every)) picks.push_back(i);
        if (picks.back() != hist.states.size() - 1) picks.push_back(hist.states.size() - 1);
    }
    for (size_t i : picks) {
        char name[64];
        std::snprintf(name, sizeof(name), "t_%05zu.bin", i);
        const fs::path p = dir / "snapshots" / name;
        write_snapshot(p.string(), hist.states[i]);
        manifest.add_output(p.string(), std::string("snapshots/") + name);
    }
}

void enforce_run_invariants(const Config& cfg, const RunHistory& hist) {
    const double tol_parity = cfg.get("tolerances.parity", 1e-12);
    const double tol_charge = cfg.get("tolerances.charge", 1e-10);
    const double tol_energy = cfg.get("tolerances.energy", 1e-9);
    if (!hist.states.empty()) {
        const double pd = parity_defect(hist.states.back());
        if (pd > tol_parity)
            throw InvariantViolation("parity defect " + std::to_string(pd) + " exceeds " + std::to_string(tol_parity));
    }
    if (hist.charge_drift() > tol_charge)
        throw InvariantViolation("charge drift " + std::to_string(hist.charge_drift()) + " exceeds " +
                                 std::to_string(tol_charge));
    if (hist.energy_drift() > tol_energy)
        throw InvariantViolation("energy drift " + std::to_string(hist.energy_drift()) + " exceeds " +
                                 std::to_string(tol_energy));
}

int cmd_linear(const CliOptions& opts, const Config& cfg, int dim) {
    const fs::path dir = prepare_out_dir(opts);
    Timer timer;
    const TorusGrid grid = grid_from_config(cfg, dim, dim == 2 ? 128 : 48);
    if (grid.dim() != dim) throw ConfigError("grid.dim conflicts with the subcommand dimension");
    const CoefficientSet coeffs =
        coefficient_preset(grid, cfg.get("coefficients.preset", std::string("flat")),
                           cfg.get("coefficients.contrast", 0.5));
    const FieldState u0 = initial_state(grid, initial_from_config(cfg, opts));
    const EvolutionConfig run_cfg = evolution_from_config(cfg);
    const RunHistory hist = run_linear(u0, coeffs, run_cfg);

    Manifest manifest;
    manifest.experiment = dim == 2 ? "linear2d" : "linear3d";
    manifest.config_echo = cfg.values();
    manifest.seed = opts.seed;
    write_report(dir, cfg, hist, &coeffs, manifest);
    write_snapshots(dir, cfg, hist, manifest);
    manifest.timings_ms["run"] = timer.ms();
    manifest.write((dir / "manifest.json").string());
    enforce_run_invariants(cfg, hist);
    log_line(opts, manifest.experiment + " finished, steps = " + std::to_string(hist.steps));
    return 0;
}

int cmd_kerr2d(const CliOptions& opts, const Config& cfg) {
    const fs::path dir = prepare_out_dir(opts);
    Timer timer;
    const TorusGrid grid = grid_from_config(cfg, 2, 128);
    if (grid.dim() != 2) throw ConfigError("kerr2d needs grid.dim = 2");
    Config cfg2 = cfg;
    if (!cfg.has("initial.preset")) cfg2.set("initial.preset", "wave-packet");
    InitialPreset preset = initial_from_config(cfg2, opts);
    FieldState u0 = initial_state(grid, preset);
    EvolutionConfig run_cfg = evolution_from_config(cfg);
    run_cfg.nonlinearity = EvolutionConfig::Nonlinearity::Kerr2d;
    const RunHistory hist = run_kerr_2d(u0, run_cfg);

    Manifest manifest;
    manifest.experiment = "kerr2d";
    manifest.config_echo = cfg.values();
    manifest.seed = opts.seed;
    write_report(dir, cfg, hist, nullptr, manifest);
    write_snapshots(dir, cfg, hist, manifest);

    if (hist.states.size() >= 5) {
        const BootstrapSeries boot = bootstrap_functionals(hist, true);
        NormReport bres;
        for (size_t i = 0; i < boot.times.size(); ++i) {
            bres.record(boot.times[i], "A1", boot.a1[i]);
            bres.record(boot.times[i], "A2", boot.a2[i]);
            bres.record(boot.times[i], "B", boot.b[i]);
            bres.record(boot.times[i], "dxu_sup", boot.dxu_sup[i]);
        }
        const fs::path bootstrap_csv = dir / "bootstrap.csv";
        bres.write_csv(bootstrap_csv.string());
        manifest.add_output(bootstrap_csv.string(), "bootstrap.csv");
        manifest.timings_ms["gronwall_c"] = boot.gronwall_c; // scalar result, recorded alongside timings
    }
    manifest.timings_ms["run"] = timer.ms();
    manifest.write((dir / "manifest.json").string());

    const double tol_charge = cfg.get("tolerances.charge", 1e-10);
    if (hist.charge_drift() > tol_charge)
        throw InvariantViolation("kerr charge drift " + std::to_string(hist.charge_drift()));
    if (!hist.states.empty()) {
        const double pd = parity_defect(hist.states.back());
        if (pd > cfg.get("tolerances.parity", 1e-12))
            throw InvariantViolation("kerr parity defect " + std::to_string(pd));
    }
    log_line(opts, "kerr2d finished, steps = " + std::to_string(hist.steps));
    return 0;
}

int cmd_check_symbols(const CliOptions& opts, const Config& cfg) {
    const fs::path dir = prepare_out_dir(opts);
    Timer timer;
    const double tol = cfg.get("symbols.tolerance", 1e-10);
    const long random_checks = cfg.get("symbols.random_checks", 10000LL);
    const long samples = cfg.get("symbols.samples", 1000LL);
    const std::vector<double> lambdas = cfg.get_list("symbols.lambdas", {16.0, 32.0, 64.0});

    std::ofstream csv(dir / "symbols.csv");
    csv << "check,dim,lambda,branch,value\n";
    char line[256];
    bool pass = true;
    std::mt19937_64 rng(opts.seed >= 0 ? static_cast<std::uint64_t>(opts.seed) : 42u);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    // algebraic identities at random arguments
    double worst_cc = 0.0, worst_adj = 0.0, worst_det = 0.0;
    for (long i = 0; i < random_checks; ++i) {
        const Eigen::Vector3d xi(unif(rng), unif(rng), unif(rng));
        Eigen::Matrix3d B;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) B(r, c) = unif(rng);
        const Eigen::Matrix3d C = curl_symbol(xi);
        worst_cc = std::max(worst_cc,
                            (C * C.transpose() - (xi.squaredNorm() * Eigen::Matrix3d::Identity() -
                                                  xi * xi.transpose())).norm());
        worst_adj = std::max(worst_adj, adjugate_identity_residual(B, xi));
        Eigen::Vector3d s = xi.normalized();
        if (std::abs(s[2]) >= default_branch_cutoff) {
            const CoeffSample3d flat{1.0, 0.0, 1.0, 1.0, 1.0, 1.0};
            const Conjugation3d conj = conjugation_3d(flat, unif(rng), xi, 2);
            worst_det = std::max(worst_det, std::abs(conj.m_raw.determinant() - s[2] * s[2]));
        }
    }
    std::snprintf(line, sizeof(line), "curl_square,3,,,%.6e\n", worst_cc);
    csv << line;
    std::snprintf(line, sizeof(line), "adjugate_identity,3,,,%.6e\n", worst_adj);
    csv << line;
    std::snprintf(line, sizeof(line), "det_m3,3,,,%.6e\n", worst_det);
    csv << line;
    pass = pass && worst_cc <= 1e-12 && worst_adj <= 1e-12 && worst_det <= 1e-12;

    // factorization residual sweeps with variable even coefficients
    {
        const TorusGrid g3 = TorusGrid::square(3, 32, 2.0 * EIGEN_PI);
        const CoefficientSet c3 = coefficient_preset(g3, "waveguide", 0.5);
        for (double lambda : lambdas) {
            const TruncatedCoefficients tc = truncate_coefficients(c3, lambda, TruncationScheme::B);
            const auto sweeps = factorization_residual_3d(g3, tc, lambda, samples, 7u + static_cast<unsigned>(lambda));
            for (int b = 0; b < 3; ++b) {
                std::snprintf(line, sizeof(line), "factorization,3,%g,%d,%.6e\n", lambda, b + 1,
                              sweeps[static_cast<size_t>(b)].max_residual);
                csv << line;
                std::snprintf(line, sizeof(line), "orthonormality,3,%g,%d,%.6e\n", lambda, b + 1,
                              sweeps[static_cast<size_t>(b)].max_ortho_defect);
                csv << line;
                pass = pass && sweeps[static_cast<size_t>(b)].max_residual <= tol &&
                       sweeps[static_cast<size_t>(b)].max_ortho_defect <= 1e-12;
            }
        }
        const TorusGrid g2 = TorusGrid::square(2, 64, 2.0 * EIGEN_PI);
        const CoefficientSet c2 = coefficient_preset(g2, "waveguide", 0.5);
        for (double lambda : lambdas) {
            const TruncatedCoefficients tc = truncate_coefficients(c2, lambda, TruncationScheme::A);
            const auto sweep = factorization_residual_2d(g2, tc, lambda, samples, 11u + static_cast<unsigned>(lambda));
            std::snprintf(line, sizeof(line), "factorization,2,%g,,%.6e\n", lambda, sweep.max_residual);
            csv << line;
            pass = pass && sweep.max_residual <= tol;
        }
    }
    csv.close();

    Manifest manifest;
    manifest.experiment = "check-symbols";
    manifest.config_echo = cfg.values();
    manifest.add_output((dir / "symbols.csv").string(), "symbols.csv");
    manifest.timings_ms["run"] = timer.ms();
    manifest.write((dir / "manifest.json").string());
    if (!pass) throw InvariantViolation("check-symbols: residuals above tolerance, see symbols.csv");
    return 0;
}

int cmd_check_helmholtz(const CliOptions& opts, const Config& cfg) {
    const fs::path dir = prepare_out_dir(opts);
    Timer timer;
    const int n_fields = cfg.get("helmholtz.fields", 50);
    const std::vector<double> s_list = cfg.get_list("helmholtz.s_list", {0.0, 1.0});
    const double band = cfg.get("helmholtz.band", 10.0);

    std::ofstream csv(dir / "helmholtz.csv");
    csv << "mode,s,field,lhs,rhs,ratio,identity_defect\n";
    char line[256];
    bool pass = true;
    const TorusGrid grid = TorusGrid::square(2, 96, 2.0 * EIGEN_PI);
    const std::uint64_t base_seed = opts.seed >= 0 ? static_cast<std::uint64_t>(opts.seed) : 5000u;

    for (int f = 0; f < n_fields; ++f) {
        RealField e1 = random_band_field(grid, 1.0, band, base_seed + 2u * static_cast<unsigned>(f), Parity::Odd);
        RealField e2 = random_band_field(grid, 1.0, band, base_seed + 2u * static_cast<unsigned>(f) + 1u, Parity::Even);
        const HelmholtzRatio torus = helmholtz_ratio(grid, {&e1, &e2}, 0.0, HelmholtzMode::Torus);
        std::snprintf(line, sizeof(line), "torus,0,%d,%.10e,%.10e,%.10e,%.6e\n", f, torus.lhs, torus.rhs,
                      torus.ratio, torus.identity_defect);
        csv << line;
        pass = pass && torus.identity_defect <= 1e-10;
        for (double s : s_list) {
            const HelmholtzRatio half = helmholtz_ratio(grid, {&e1, &e2}, s, HelmholtzMode::Half);
            std::snprintf(line, sizeof(line), "half,%g,%d,%.10e,%.10e,%.10e,\n", s, f, half.lhs, half.rhs,
                          half.ratio);
            csv << line;
        }
    }
    csv.close();

    Manifest manifest;
    manifest.experiment = "check-helmholtz";
    manifest.config_echo = cfg.values();
    manifest.add_output((dir / "helmholtz.csv").string(), "helmholtz.csv");
    manifest.timings_ms["run"] = timer.ms();
    manifest.write((dir / "manifest.json").string());
    if (!pass) throw InvariantViolation("check-helmholtz: torus identity defect above 1e-10");
    return 0;
}

int cmd_check_envelopes(const CliOptions& opts, const Config& cfg) {
    const fs::path dir = prepare_out_dir(opts);
    Timer timer;
    const double s = cfg.get("envelopes.s", 1.5);
    const double delta = cfg.get("envelopes.delta", 0.25);
    const int n_fields = cfg.get("envelopes.fields", 8);
    const std::vector<double> ladder = cfg.get_list("envelopes.ladder", {4, 8, 16, 32, 64, 128});

    const TorusGrid grid = TorusGrid::square(2, 128, 2.0 * EIGEN_PI);
    bool pass = true;
    const std::uint64_t base_seed = opts.seed >= 0 ? static_cast<std::uint64_t>(opts.seed) : 9000u;

    FrequencyEnvelope last_env;
    for (int f = 0; f < n_fields; ++f) {
        const RealField u = random_band_field(grid, 0.0, 40.0, base_seed + static_cast<unsigned>(f), Parity::Even);
        const FrequencyEnvelope env = sharp_envelope(grid, u, s, delta);
        const EnvelopeCheck chk = verify_envelope(env, sobolev_norm(grid, u, s));
        pass = pass && chk.energy_margin <= 1e-12 && chk.slow_margin <= 1.0 + 1e-12 &&
               chk.l2_ratio <= chk.c_delta * 3.0; // 3 covers the band-overlap factor
        last_env = env;
    }
    write_envelope_csv((dir / "envelopes.csv").string(), last_env);

    // mollifier ladder: parity preserved, L^2 distance decreasing
    {
        FieldState state = initial_state(grid, {"wave-packet", 1.0, 6.0, base_seed});
        double prev = std::numeric_limits<double>::infinity();
        for (double n : ladder) {
            const FieldState m = mollify_preserving_bc(state, n);
            pass = pass && parity_defect(m) <= 1e-12;
            double dist = 0.0;
            for (int c = 0; c < state.n_comps(); ++c) {
                const double d = sobolev_norm(grid, RealField(m.comps[static_cast<size_t>(c)] -
                                                              state.comps[static_cast<size_t>(c)]), 0.0);
                dist += d * d;
            }
            dist = std::sqrt(dist);
            pass = pass && dist <= prev * (1.0 + 1e-12);
            prev = dist;
        }
    }

    Manifest manifest;
    manifest.experiment = "check-envelopes";
    manifest.config_echo = cfg.values();
    manifest.add_output((dir / "envelopes.csv").string(), "envelopes.csv");
    manifest.timings_ms["run"] = timer.ms();
    manifest.write((dir / "manifest.json").string());
    if (!pass) throw InvariantViolation("check-envelopes: an envelope or mollifier property failed");
    return 0;
}

int cmd_check_compat(const CliOptions& opts, const Config& cfg) {
    const fs::path dir = prepare_out_dir(opts);
    Timer timer;
    const int order = cfg.get("compat.order", 2);
    const TorusGrid grid = TorusGrid::square(3, 32, 2.0 * EIGEN_PI);
    const CoefficientSet coeffs = coefficient_preset(grid, "waveguide", 0.4);
    const FieldState state = random_state(grid, 1.0, 6.0, opts.seed >= 0 ? static_cast<std::uint64_t>(opts.seed) : 3u);
    const auto rows = compatibility_residuals(state, coeffs, order);
    write_compat_csv((dir / "compat.csv").string(), rows);

    Manifest manifest;
    manifest.experiment = "check-compat";
    manifest.config_echo = cfg.values();
    manifest.add_output((dir / "compat.csv").string(), "compat.csv");
    manifest.timings_ms["run"] = timer.ms();
    manifest.write((dir / "manifest.json").string());

    for (const CompatRow& r : rows)
        if (r.order <= 1 && r.residual > 1e-10)
            throw InvariantViolation("check-compat: parity-enforced condition " + r.id + " has residual " +
                                     std::to_string(r.residual));
    return 0;
}

int cmd_strichartz_sweep(const CliOptions& opts, const Config& cfg) {
    const fs::path dir = prepare_out_dir(opts);
    Timer timer;
    SweepConfig sweep;
    sweep.dim = cfg.get("grid.dim", 2);
    const std::vector<double> pq = cfg.get_list("sweep.pq", sweep.dim == 2
                                                                ? std::vector<double>{8, 8}
                                                                : std::vector<double>{std::numeric_limits<double>::infinity(), 2, 4, 8});
    if (pq.size() % 2 != 0) throw ConfigError("sweep.pq must list p q pairs");
    sweep.triples.clear();
    for (size_t i = 0; i + 1 < pq.size(); i += 2) sweep.triples.emplace_back(pq[i], pq[i + 1]);
    sweep.lambdas = cfg.get_list("sweep.lambdas", sweep.dim == 2 ? std::vector<double>{4, 8, 16, 32, 64}
                                                                 : std::vector<double>{4, 8, 16});
    sweep.points_per_lambda = cfg.get_list("sweep.points_per_lambda", {4.0, 5.0, 6.0});
    sweep.seeds = cfg.get("sweep.seeds", 20);
    sweep.T = cfg.get("sweep.T", 0.5);
    sweep.workers = opts.workers;
    if (opts.seed >= 0) sweep.seed0 = static_cast<std::uint64_t>(opts.seed);

    const auto rows = strichartz_sweep(sweep);
    write_sweep_csv((dir / "strichartz.csv").string(), rows);
    const SweepSummary summary = summarize(rows);

    nlohmann::json j;
    j["min"] = summary.min_ratio;
    j["max"] = summary.max_ratio;
    j["median"] = summary.median_ratio;
    j["spread"] = summary.spread;
    j["median_by_refinement"] = summary.median_by_refinement;
    std::ofstream(dir / "summary.json") << j.dump(2) << "\n";

    Manifest manifest;
    manifest.experiment = "strichartz-sweep";
    manifest.config_echo = cfg.values();
    manifest.seed = opts.seed;
    manifest.add_output((dir / "strichartz.csv").string(), "strichartz.csv");
    manifest.add_output((dir / "summary.json").string(), "summary.json");
    manifest.timings_ms["run"] = timer.ms();
    manifest.write((dir / "manifest.json").string());

    if (summary.spread > 100.0)
        throw InvariantViolation("strichartz-sweep: ratio spread " + std::to_string(summary.spread) +
                                 " exceeds 100");
    for (size_t r = 1; r < summary.median_by_refinement.size(); ++r)
        if (summary.median_by_refinement[r] > summary.median_by_refinement[r - 1] * (1.0 + 1e-9))
            throw InvariantViolation("strichartz-sweep: median ratio increased under refinement");
    return 0;
}

int cmd_cyl_consistency(const CliOptions& opts, const Config& cfg) {
    const fs::path dir = prepare_out_dir(opts);
    Timer timer;
    const TorusGrid grid = grid_from_config(cfg, 2, 64);
    Config cfg2 = cfg;
    if (!cfg.has("initial.preset")) cfg2.set("initial.preset", "wave-packet");
    const FieldState u0 = initial_state(grid, initial_from_config(cfg2, opts));
    EvolutionConfig run_cfg = evolution_from_config(cfg);
    if (!cfg.has("run.T")) run_cfg.T = 0.5;
    const CylinderReport report = cylindrical_lift_and_compare(
        u0, run_cfg, cfg.get("cyl.n", 64), cfg.get("cyl.length", double(2.0 * EIGEN_PI)),
        cfg.get("cyl.plateau_radius", 1.7), cfg.get("cyl.sigma", 0.16), cfg.get("cyl.check_radius", 0.5));

    std::ofstream csv(dir / "cyl.csv");
    csv << "time,discrepancy_l2\n";
    char line[128];
    for (size_t i = 0; i < report.times.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", report.times[i], report.discrepancy_l2[i]);
        csv << line;
    }
    csv.close();

    Manifest manifest;
    manifest.experiment = "cyl-consistency";
    manifest.config_echo = cfg.values();
    manifest.add_output((dir / "cyl.csv").string(), "cyl.csv");
    manifest.timings_ms["run"] = timer.ms();
    manifest.timings_ms["plateau_derivative_t0"] = report.plateau_derivative_t0;
    manifest.write((dir / "manifest.json").string());

    if (report.max_discrepancy > 1e-6)
        throw InvariantViolation("cyl-consistency: discrepancy " + std::to_string(report.max_discrepancy));
    if (report.plateau_derivative_t0 > 1e-10)
        throw InvariantViolation("cyl-consistency: plateau derivative " +
                                 std::to_string(report.plateau_derivative_t0));
    return 0;
}

} // namespace

int run_subcommand(const CliOptions& opts) {
    try {
        Config cfg = opts.config_path.empty() ? Config{} : Config::parse_file(opts.config_path, config_schema());
        if (opts.subcommand == "linear2d") return cmd_linear(opts, cfg, 2);
        if (opts.subcommand == "linear3d") return cmd_linear(opts, cfg, 3);
        if (opts.subcommand == "kerr2d") return cmd_kerr2d(opts, cfg);
        if (opts.subcommand == "check-symbols") return cmd_check_symbols(opts, cfg);
        if (opts.subcommand == "check-helmholtz") return cmd_check_helmholtz(opts, cfg);
        if (opts.subcommand == "check-envelopes") return cmd_check_envelopes(opts, cfg);
        if (opts.subcommand == "check-compat") return cmd_check_compat(opts, cfg);
        if (opts.subcommand == "strichartz-sweep") return cmd_strichartz_sweep(opts, cfg);
        if (opts.subcommand == "cyl-consistency") return cmd_cyl_consistency(opts, cfg);
        std::cerr << "maxlab: unknown subcommand '" << opts.subcommand << "'\n";
        return 2;
    } catch (const InvariantViolation& err) {
        std::cerr << "maxlab: invariant violation: " << err.what() << "\n";
        return 3;
    } catch (const InvalidInput& err) {
        std::cerr << "maxlab: " << err.what() << "\n";
        return 2;
    }
}

} // namespace maxlab
