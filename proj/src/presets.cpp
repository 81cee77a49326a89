#include "maxlab/presets.hpp"

#include <cmath>

#include "maxlab/evolution.hpp"
#include "maxlab/lp.hpp"
#include "maxlab/spectral.hpp"

namespace maxlab {

namespace {

RealField sample_grid(const TorusGrid& grid, const std::function<double(const Eigen::Vector3d&)>& f) {
    RealField out(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        const auto idx = grid.unflat(i);
        Eigen::Vector3d x = Eigen::Vector3d::Zero();
        for (int a = 0; a < grid.dim(); ++a) x[a] = grid.coord(a, idx[static_cast<size_t>(a)]);
        out[i] = f(x);
    }
    return out;
}

// smooth periodic bump centered on the upper half with exact zeros in a
// strip around both fixed planes of the reflection (wall margin 0.55)
double interior_bump(const TorusGrid& grid, const Eigen::Vector3d& x, double width_frac) {
    double acc = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        const double L = grid.length(a);
        const double c = a == grid.normal_axis() ? 0.25 * L : 0.5 * L;
        double d = std::fmod(std::abs(x[a] - c), L);
        d = std::min(d, L - d);
        const double w = width_frac * L;
        acc += d * d / (2.0 * w * w);
    }
    const int nrm = grid.normal_axis();
    const double Ln = grid.length(nrm);
    double wall = std::min(std::abs(x[nrm]), Ln - std::abs(x[nrm]));
    wall = std::min(wall, std::abs(x[nrm] - Ln / 2.0));
    const double window = wall <= 0.55 ? 0.0 : 1.0 - smooth_step_down(1.0 + (wall - 0.55) / 0.55);
    return window * std::exp(-acc);
}

} // namespace

CoefficientSet coefficient_preset(const TorusGrid& grid, const std::string& name, double contrast) {
    if (name == "flat") return flat_coefficients(grid);
    if (name == "waveguide") {
        const int nrm = grid.normal_axis();
        const double Ln = grid.length(nrm);
        auto even_profile = [&](const Eigen::Vector3d& x, double a, double b) {
            const double s = std::sin(EIGEN_PI * x[nrm] / Ln);
            return 1.0 + a * s * s * (1.0 + b * std::cos(2.0 * EIGEN_PI * x[0] / grid.length(0)));
        };
        RealField g11 = sample_grid(grid, [&](const Eigen::Vector3d& x) { return even_profile(x, contrast, 0.3); });
        RealField g12 = grid.dim() == 3
                            ? sample_grid(grid,
                                          [&](const Eigen::Vector3d& x) {
                                              const double s = std::sin(EIGEN_PI * x[nrm] / Ln);
                                              return 0.2 * contrast * s * s *
                                                     std::sin(2.0 * EIGEN_PI * x[1] / grid.length(1));
                                          })
                            : RealField(RealField::Zero(grid.size()));
        RealField g22 = grid.dim() == 3
                            ? sample_grid(grid, [&](const Eigen::Vector3d& x) { return even_profile(x, 0.7 * contrast, -0.2); })
                            : RealField(RealField::Ones(grid.size()));
        RealField eps = sample_grid(grid, [&](const Eigen::Vector3d& x) { return even_profile(x, 0.5 * contrast, 0.1); });
        RealField mu = RealField::Ones(grid.size());
        return assemble_coefficients(grid, std::move(eps), std::move(mu), std::move(g11), std::move(g12),
                                     std::move(g22));
    }
    if (name == "kink") {
        // Lipschitz |x_d|-type profile: the singular family the truncation and
        // commutator diagnostics are calibrated on
        const int nrm = grid.normal_axis();
        const double Ln = grid.length(nrm);
        RealField eps = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            double d = std::min(x[nrm], Ln - x[nrm]);
            return 1.0 + contrast * d;
        });
        RealField mu = RealField::Ones(grid.size());
        return assemble_coefficients(grid, std::move(eps), std::move(mu), RealField(RealField::Ones(grid.size())),
                                     RealField(RealField::Zero(grid.size())), RealField(RealField::Ones(grid.size())));
    }
    throw InvalidInput("coefficient_preset: unknown preset '" + name + "'");
}

FieldState standing_wave_exact(const TorusGrid& grid, int mode, double amplitude, double time) {
    FieldState s = FieldState::zero(grid);
    s.time = time;
    const double k = 2.0 * EIGEN_PI * mode / grid.length(0);
    const double omega = std::abs(k);
    if (grid.dim() == 2) {
        // E = (0, a cos(kx1) cos(wt)), H = a sin(kx1) sin(wt)
        s.comps[1] = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            return amplitude * std::cos(k * x[0]) * std::cos(omega * time);
        });
        s.comps[2] = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            return amplitude * std::sin(k * x[0]) * std::sin(omega * time);
        });
    } else {
        // E = e3 a cos(kx1) cos(wt), H = -e2 a sin(kx1) sin(wt)
        s.comps[2] = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            return amplitude * std::cos(k * x[0]) * std::cos(omega * time);
        });
        s.comps[4] = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            return -amplitude * std::sin(k * x[0]) * std::sin(omega * time);
        });
    }
    return s;
}

FieldState initial_state(const TorusGrid& grid, const InitialPreset& preset) {
    if (preset.name == "zero") return FieldState::zero(grid);
    if (preset.name == "standing-wave")
        return standing_wave_exact(grid, std::max(1, static_cast<int>(preset.band)), preset.amplitude, 0.0);
    if (preset.name == "random-band") {
        FieldState s = random_state(grid, 0.75 * preset.band, 1.5 * preset.band, preset.seed);
        for (auto& c : s.comps) c *= preset.amplitude;
        return s;
    }
    if (preset.name == "wave-packet") {
        FieldState s = FieldState::zero(grid);
        const double k = 2.0 * EIGEN_PI * std::max(1.0, preset.band) / grid.length(0);
        RealField packet = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            return preset.amplitude * interior_bump(grid, x, 0.06) * std::cos(k * x[0]);
        });
        RealField packet2 = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            return preset.amplitude * interior_bump(grid, x, 0.06) * std::sin(k * x[0]);
        });
        if (grid.dim() == 2) {
            s.comps[1] = symmetrize(grid, packet, Parity::Even);
            s.comps[2] = symmetrize(grid, packet2, Parity::Even);
        } else {
            s.comps[2] = symmetrize(grid, packet, Parity::Even);  // E3
            s.comps[4] = symmetrize(grid, packet2, Parity::Even); // H2
        }
        return s;
    }
    if (preset.name == "charged-gradient") {
        if (grid.dim() != 2) throw InvalidInput("initial_state: charged-gradient is a 2-d preset");
        // D = grad(phi) with odd phi, so rho_e = lap(phi) is nonzero and odd;
        // E recovered through the Kerr material law.
        FieldState s = FieldState::zero(grid);
        const double k1 = 2.0 * EIGEN_PI / grid.length(0);
        const double k2 = 2.0 * EIGEN_PI / grid.length(1);
        RealField phi = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            return preset.amplitude * std::cos(2.0 * k1 * x[0]) * std::sin(k2 * x[1]);
        });
        RealField d1 = derivative(grid, phi, 0);
        RealField d2 = derivative(grid, phi, 1);
        kerr_invert(d1, d2, s.comps[0], s.comps[1]);
        s.comps[2] = sample_grid(grid, [&](const Eigen::Vector3d& x) {
            return 0.5 * preset.amplitude * std::cos(k1 * x[0]) * std::cos(k2 * x[1]);
        });
        return s;
    }
    throw InvalidInput("initial_state: unknown preset '" + preset.name + "'");
}

} // namespace maxlab
