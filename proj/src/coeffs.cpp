#include "maxlab/coeffs.hpp"

#include <cmath>

namespace maxlab {

CoefficientSet flat_coefficients(const TorusGrid& grid) {
    const RealField one = RealField::Ones(grid.size());
    const RealField zero = RealField::Zero(grid.size());
    return assemble_coefficients(grid, one, one, one, zero, one);
}

CoefficientSet assemble_coefficients(const TorusGrid& grid, RealField eps, RealField mu,
                                     RealField g11, RealField g12, RealField g22) {
    CoefficientSet c;
    c.grid = grid;
    c.eps = std::move(eps);
    c.mu = std::move(mu);
    c.g11 = std::move(g11);
    c.g12 = std::move(g12);
    c.g22 = std::move(g22);

    const Index n = grid.size();
    c.a11.resize(n);
    c.a21.resize(n);
    c.a22.resize(n);
    c.sqrt_g.resize(n);
    for (Index i = 0; i < n; ++i) {
        const double det = c.g11[i] * c.g22[i] - c.g12[i] * c.g12[i];
        if (c.g11[i] <= 0.0 || det <= 0.0)
            throw InvalidInput("assemble_coefficients: cometric block not positive definite");
        // lower Cholesky of [[g11, g12], [g12, g22]]
        c.a11[i] = std::sqrt(c.g11[i]);
        c.a21[i] = c.g12[i] / c.a11[i];
        c.a22[i] = std::sqrt(c.g22[i] - c.a21[i] * c.a21[i]);
        c.sqrt_g[i] = 1.0 / (c.a11[i] * c.a22[i]); // det(g_ij)^{1/2}
    }
    if ((c.eps <= 0.0).any() || (c.mu <= 0.0).any())
        throw InvalidInput("assemble_coefficients: eps/mu must be positive");
    return c;
}

CoefficientSet geodesic_coefficients(const TorusGrid& grid, const HalfField& eps, const HalfField& mu,
                                     const std::vector<HalfField>& cometric_block) {
    RealField eps_t = extend_half_to_torus(eps, Parity::Even);
    RealField mu_t = extend_half_to_torus(mu, Parity::Even);
    RealField g11, g12, g22;
    if (grid.dim() == 3) {
        if (cometric_block.size() != 3)
            throw InvalidInput("geodesic_coefficients: 3-d expects {g11, g12, g22}");
        g11 = extend_half_to_torus(cometric_block[0], Parity::Even);
        g12 = extend_half_to_torus(cometric_block[1], Parity::Even);
        g22 = extend_half_to_torus(cometric_block[2], Parity::Even);
    } else {
        if (cometric_block.size() != 1)
            throw InvalidInput("geodesic_coefficients: 2-d expects {g1}");
        g11 = extend_half_to_torus(cometric_block[0], Parity::Even);
        g12 = RealField::Zero(grid.size());
        g22 = RealField::Ones(grid.size());
    }
    return assemble_coefficients(grid, std::move(eps_t), std::move(mu_t),
                                 std::move(g11), std::move(g12), std::move(g22));
}

std::pair<double, double> ellipticity_bounds(const CoefficientSet& c) {
    double lo = std::min(c.eps.minCoeff(), c.mu.minCoeff());
    double hi = std::max(c.eps.maxCoeff(), c.mu.maxCoeff());
    for (Index i = 0; i < c.grid.size(); ++i) {
        const double tr = c.g11[i] + c.g22[i];
        const double det = c.g11[i] * c.g22[i] - c.g12[i] * c.g12[i];
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        lo = std::min(lo, tr / 2.0 - disc);
        hi = std::max(hi, tr / 2.0 + disc);
    }
    if (lo <= 0.0) throw InvariantViolation("ellipticity_bounds: lower bound not positive");
    return {lo, hi};
}

namespace {
// Inverse of the symmetric block [[p11, p12, 0], [p12, p22, 0], [0, 0, p33]].
void invert_block(const RealField& p11, const RealField& p12, const RealField& p22, const RealField& p33,
                  RealField& i11, RealField& i12, RealField& i22, RealField& i33) {
    const RealField det = p11 * p22 - p12 * p12;
    i11 = p22 / det;
    i12 = -p12 / det;
    i22 = p11 / det;
    i33 = p33.inverse();
}
} // namespace

Material3d conservative_material_3d(const CoefficientSet& c) {
    Material3d m;
    m.e11 = c.sqrt_g * c.g11 * c.eps;
    m.e12 = c.sqrt_g * c.g12 * c.eps;
    m.e22 = c.sqrt_g * c.g22 * c.eps;
    m.e33 = c.sqrt_g * c.eps;
    m.m11 = c.sqrt_g * c.g11 * c.mu;
    m.m12 = c.sqrt_g * c.g12 * c.mu;
    m.m22 = c.sqrt_g * c.g22 * c.mu;
    m.m33 = c.sqrt_g * c.mu;
    invert_block(m.e11, m.e12, m.e22, m.e33, m.ie11, m.ie12, m.ie22, m.ie33);
    invert_block(m.m11, m.m12, m.m22, m.m33, m.im11, m.im12, m.im22, m.im33);
    return m;
}

Material2d conservative_material_2d(const CoefficientSet& c) {
    Material2d m;
    m.e11 = c.sqrt_g * c.g11 * c.eps;
    m.e22 = c.sqrt_g * c.eps;
    m.mu_eff = c.sqrt_g * c.mu;
    m.ie11 = m.e11.inverse();
    m.ie22 = m.e22.inverse();
    m.imu = m.mu_eff.inverse();
    return m;
}

double max_wave_speed(const CoefficientSet& c) {
    double worst = 0.0;
    for (Index i = 0; i < c.grid.size(); ++i) {
        // spectral norm of the lower-triangular A (tangential block plus unit normal)
        Eigen::Matrix2d aat;
        aat << c.g11[i], c.g12[i], c.g12[i], c.g22[i];
        const double tr = aat.trace();
        const double det = aat.determinant();
        const double top = tr / 2.0 + std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        const double a_norm = std::sqrt(std::max(1.0, top)); // normal direction contributes 1
        worst = std::max(worst, a_norm / std::sqrt(c.eps[i] * c.mu[i]));
    }
    return worst;
}

} // namespace maxlab
