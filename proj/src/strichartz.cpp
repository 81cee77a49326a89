#include "maxlab/strichartz.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "maxlab/presets.hpp"

namespace maxlab {

namespace {

struct Task {
    std::uint64_t seed;
    int refinement;
    int grid_n;
    double lambda;
};

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::vector<SweepRow> strichartz_sweep(const SweepConfig& config) {
    if (config.triples.empty()) throw InvalidInput("strichartz_sweep: no exponent pairs");
    std::vector<AdmissibleTriple> triples;
    for (const auto& [p, q] : config.triples) {
        const AdmissibilityResult res = admissible(p, q, config.dim);
        if (!res.ok()) throw InvalidInput("strichartz_sweep: inadmissible (p, q): " + res.rejection);
        triples.push_back(*res.triple);
    }

    std::vector<Task> tasks;
    for (int s = 0; s < config.seeds; ++s) {
        for (size_t r = 0; r < config.points_per_lambda.size(); ++r) {
            for (double lambda : config.lambdas) {
                // grid scaled with the data frequency; even point counts only
                int n = static_cast<int>(std::lround(config.points_per_lambda[r] * lambda / 2.0)) * 2;
                n = std::max(n, 16);
                tasks.push_back({config.seed0 + static_cast<std::uint64_t>(s), static_cast<int>(r), n, lambda});
            }
        }
    }

    std::vector<std::vector<SweepRow>> results(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            const TorusGrid grid = TorusGrid::square(config.dim, task.grid_n, config.length);
            const CoefficientSet coeffs = flat_coefficients(grid);
            InitialPreset preset;
            preset.name = "random-band";
            preset.band = task.lambda;
            preset.seed = task.seed;
            const FieldState u0 = initial_state(grid, preset);

            EvolutionConfig run_cfg;
            run_cfg.T = config.T;
            run_cfg.cfl = config.cfl;
            run_cfg.store_states = true;
            run_cfg.sample_every = 1;
            const RunHistory hist = run_linear(u0, coeffs, run_cfg);

            const RealField rho0 = charge(u0, coeffs);
            for (const AdmissibleTriple& t : triples) {
                const double delta = config.delta_fraction * t.delta_max;
                const double charge_s = t.gamma - 1.0 + (std::isinf(t.p) ? 0.0 : 1.0 / t.p) + delta;
                const double rho_norm = sobolev_norm(grid, rho0, charge_s);
                const double rho_norm_hom = homogeneous_sobolev_norm(grid, rho0, charge_s);
                SweepRow row;
                row.seed = task.seed;
                row.grid_n = task.grid_n;
                row.refinement = task.refinement;
                row.lambda = task.lambda;
                row.p = t.p;
                row.q = t.q;
                row.gamma = t.gamma;
                row.delta = delta;
                row.ratio = strichartz_ratio(hist, t, delta, rho_norm);
                const double data_norm = sobolev_norm(hist.states.front(), t.gamma + delta);
                row.ratio_homogeneous_charge =
                    row.ratio * (data_norm + rho_norm) / std::max(1e-300, data_norm + rho_norm_hom);
                results[i].push_back(row);
            }
        }
    };

    const int n_workers = std::max(1, config.workers);
    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<SweepRow> rows; // merged deterministically in task order
    for (const auto& chunk : results) rows.insert(rows.end(), chunk.begin(), chunk.end());
    return rows;
}

SweepSummary summarize(const std::vector<SweepRow>& rows) {
    SweepSummary s;
    if (rows.empty()) return s;
    std::vector<double> all;
    int max_ref = 0;
    for (const SweepRow& r : rows) {
        all.push_back(r.ratio);
        max_ref = std::max(max_ref, r.refinement);
    }
    s.min_ratio = *std::min_element(all.begin(), all.end());
    s.max_ratio = *std::max_element(all.begin(), all.end());
    s.median_ratio = median(all);
    s.spread = s.min_ratio > 0.0 ? s.max_ratio / s.min_ratio : std::numeric_limits<double>::infinity();
    for (int r = 0; r <= max_ref; ++r) {
        std::vector<double> level;
        for (const SweepRow& row : rows)
            if (row.refinement == r) level.push_back(row.ratio);
        s.median_by_refinement.push_back(median(level));
    }
    return s;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("write_sweep_csv: cannot open " + path);
    out << "seed,grid,refinement,lambda,p,q,gamma,delta,ratio,ratio_hom_charge\n";
    char buf[256];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%g,%g,%g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(r.seed), r.grid_n, r.refinement, r.lambda, r.p, r.q,
                      r.gamma, r.delta, r.ratio, r.ratio_homogeneous_charge);
        out << buf;
    }
}

} // namespace maxlab
