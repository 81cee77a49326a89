#pragma once

#include "maxlab/diagnostics.hpp"

namespace maxlab {

struct SweepConfig {
    int dim = 2;
    std::vector<std::pair<double, double>> triples; // (p, q)
    std::vector<double> lambdas = {4, 8, 16, 32, 64};
    std::vector<double> points_per_lambda = {4.0, 5.0, 6.0}; // grid refinement ladder
    int seeds = 20;
    std::uint64_t seed0 = 1000;
    double T = 0.5;
    double cfl = 0.4;
    double length = 2.0 * EIGEN_PI;
    int workers = 2;
    double delta_fraction = 0.5; // delta = delta_fraction * delta_max
};

struct SweepRow {
    std::uint64_t seed = 0;
    int grid_n = 0;
    int refinement = 0;
    double lambda = 0.0;
    double p = 0.0, q = 0.0, gamma = 0.0, delta = 0.0;
    double ratio = 0.0;
    double ratio_homogeneous_charge = 0.0; // same quotient with |xi|-weighted charge norm, reported separately
};

struct SweepSummary {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    double spread = 0.0; // max / min
    /// Median ratio per refinement level (over seeds and lambdas), coarse to fine.
    std::vector<double> median_by_refinement;
};

std::vector<SweepRow> strichartz_sweep(const SweepConfig& config);
SweepSummary summarize(const std::vector<SweepRow>& rows);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

} // namespace maxlab
