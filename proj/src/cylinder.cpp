#include "maxlab/cylinder.hpp"

#include <cmath>

#include "maxlab/spectral.hpp"

namespace maxlab {

Eigen::ArrayXd plateau_profile(int n, double L, double radius, double sigma) {
    if (2.0 * radius >= L) throw InvalidInput("plateau_profile: plateau wider than the circle");
    Eigen::ArrayXd out(n);
    const double c = L / 2.0;
    for (int i = 0; i < n; ++i) {
        const double y = L * i / n;
        double acc = 2.0 * radius / L; // k = 0 coefficient of the indicator
        for (int m = 1; m <= n / 2; ++m) {
            const double k = 2.0 * EIGEN_PI * m / L;
            const double coeff = (2.0 / (L * k)) * 2.0 * std::sin(k * radius) *
                                 std::exp(-0.5 * k * k * sigma * sigma);
            acc += coeff * std::cos(k * (y - c));
        }
        out[i] = acc;
    }
    return out;
}

CylinderLift cylindrical_lift(const FieldState& state2, int n_cyl, double cyl_length,
                              double plateau_radius, double sigma) {
    if (state2.dim() != 2) throw InvalidInput("cylindrical_lift: 2-d state expected");
    const TorusGrid& g2 = state2.grid;
    CylinderLift lift;
    lift.grid3 = TorusGrid({g2.n(0), n_cyl, g2.n(1)}, {g2.length(0), cyl_length, g2.length(1)});
    lift.profile = plateau_profile(n_cyl, cyl_length, plateau_radius, sigma);
    lift.plane_index = n_cyl / 2;

    FieldState s3 = FieldState::zero(lift.grid3);
    s3.time = state2.time;
    // axes (y1, y2, y3) = (x1, cylinder, x2); active components E_y1 = E1,
    // E_y3 = E2, H_y2 = -H keep the 2-d orientation of the perp-curl pair.
    for (Index i = 0; i < lift.grid3.size(); ++i) {
        const auto idx = lift.grid3.unflat(i);
        const double phi = lift.profile[idx[1]];
        const Index j2 = g2.flat({idx[0], idx[2], 0});
        s3.E(0)[i] = phi * state2.E(0)[j2];
        s3.E(2)[i] = phi * state2.E(1)[j2];
        s3.H(1)[i] = -phi * state2.H()[j2];
    }
    lift.state3 = std::move(s3);
    return lift;
}

CylinderReport cylindrical_lift_and_compare(const FieldState& state2, const EvolutionConfig& config,
                                            int n_cyl, double cyl_length, double plateau_radius,
                                            double sigma, double check_radius) {
    const double speed_margin = plateau_radius - config.T;
    if (speed_margin <= 0.0)
        throw InvalidInput("cylindrical_lift_and_compare: plateau radius " + std::to_string(plateau_radius) +
                           " too small for horizon T = " + std::to_string(config.T) +
                           " (unit wave speed reaches the transition)");

    CylinderLift lift = cylindrical_lift(state2, n_cyl, cyl_length, plateau_radius, sigma);
    const TorusGrid& g3 = lift.grid3;
    const TorusGrid& g2 = state2.grid;

    CylinderReport report;
    // derivative along the cylinder axis of the active components at t = 0
    {
        double worst = 0.0;
        const double c = cyl_length / 2.0;
        for (int comp : {0, 2, 4}) { // E_y1, E_y3, H_y2
            const RealField d = derivative(g3, lift.state3.comps[static_cast<size_t>(comp)], 1);
            for (Index i = 0; i < g3.size(); ++i) {
                const auto idx = g3.unflat(i);
                const double y = g3.coord(1, idx[1]);
                if (std::abs(y - c) <= check_radius) worst = std::max(worst, std::abs(d[i]));
            }
        }
        report.plateau_derivative_t0 = worst;
    }

    // identical dt for both runs
    const CoefficientSet c3 = flat_coefficients(g3);
    const CoefficientSet c2 = flat_coefficients(g2);
    EvolutionConfig cfg = config;
    const double dt3 = config.pick_dt(g3, max_wave_speed(c3));
    const double dt2 = config.pick_dt(g2, max_wave_speed(c2));
    const double dt = std::min(dt2, dt3);
    const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(config.T / dt - 1e-9)));
    cfg.dt_override = config.T / static_cast<double>(nsteps);
    report.dt = *cfg.dt_override;

    FieldState cur3 = lift.state3;
    FieldState cur2 = state2;
    const double area_scale = g2.cell_volume();
    auto compare = [&]() {
        double acc = 0.0;
        for (Index j = 0; j < g2.size(); ++j) {
            const auto idx2 = g2.unflat(j);
            const Index i3 = g3.flat({idx2[0], lift.plane_index, idx2[1]});
            const double de1 = cur3.E(0)[i3] - cur2.E(0)[j];
            const double de2 = cur3.E(2)[i3] - cur2.E(1)[j];
            const double dh = -cur3.H(1)[i3] - cur2.H()[j];
            acc += de1 * de1 + de2 * de2 + dh * dh;
        }
        report.times.push_back(cur2.time);
        report.discrepancy_l2.push_back(std::sqrt(acc * area_scale));
    };

    compare();
    for (long n = 0; n < nsteps; ++n) {
        cur3 = step_linear(cur3, c3, cfg);
        cur2 = step_linear(cur2, c2, cfg);
        compare();
    }
    report.max_discrepancy = 0.0;
    for (double v : report.discrepancy_l2) report.max_discrepancy = std::max(report.max_discrepancy, v);
    return report;
}

} // namespace maxlab
