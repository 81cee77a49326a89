#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxlab/fields.hpp"

namespace maxlab {

/// Sobolev norm (sum_xi <xi>^{2s} |f_hat(xi)|^2)^{1/2}, normalized so that
/// s = 0 coincides with the L^2 quadrature norm.
double sobolev_norm(const TorusGrid& grid, const RealField& f, double s);
double sobolev_norm(const FieldState& state, double s);

/// Homogeneous variant |xi|^{2s} with the xi = 0 mode mapped to 0.
double homogeneous_sobolev_norm(const TorusGrid& grid, const RealField& f, double s);

/// L^q quadrature norm; q = infinity is the max norm. Vector overload uses the
/// pointwise Euclidean magnitude over components.
double lq_norm(const TorusGrid& grid, const RealField& f, double q);
double lq_norm(const TorusGrid& grid, const std::vector<const RealField*>& comps, double q);
double lq_norm(const FieldState& state, double q);

/// H^s of the restriction to the half torus, realized as the torus norm of the
/// parity extension scaled by 1/sqrt(2).
double half_space_sobolev_norm(const TorusGrid& grid, const RealField& f, double s);

/// One diagnostic row per recorded time.
struct NormRow {
    double time = 0.0;
    std::map<std::string, double> values;
};

/// Structured record of norms, energies and charges along a run, plus mixed
/// space-time norm accumulators. All entries must stay finite.
class NormReport {
public:
    void record(double time, const std::string& key, double value);

    /// Feed one snapshot into the (p, q) accumulator. p may be infinity.
    void mixed_norm_accumulate(const FieldState& snapshot, double p, double q);

    /// Composite ||  ||u(t)||_{L^q} ||_{L^p_t} over the accumulated snapshots
    /// (trapezoidal in t; running max for p = infinity).
    double mixed_norm(double p, double q) const;

    const std::vector<NormRow>& rows() const { return rows_; }
    std::vector<std::pair<double, double>> series(const std::string& key) const;

    void write_csv(const std::string& path) const;

private:
    struct MixedAcc {
        std::vector<double> times;
        std::vector<double> lq;
    };
    static std::string mixed_key(double p, double q);

    std::vector<NormRow> rows_;
    std::map<std::string, MixedAcc> mixed_;
    std::optional<TorusGrid> mixed_grid_;
};

} // namespace maxlab
