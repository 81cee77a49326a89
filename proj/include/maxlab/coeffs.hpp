#pragma once

#include "maxlab/reflect.hpp"

namespace maxlab {

/// Material and metric samples on the reflected torus, all extended evenly.
///
/// The cometric has geodesic form: unit normal-normal entry and a tangential
/// block [[g11, g12], [g12, g22]] (2-d: the single entry g11, with g22 = 1
/// meaning the normal direction). A is the lower Cholesky factor of the
/// tangential block, so g^{-1} = A A^t, and sqrt_g = det(g_ij)^{1/2} = 1/det(A).
struct CoefficientSet {
    TorusGrid grid;
    RealField eps; // isotropic permittivity
    RealField mu;  // permeability
    RealField g11, g12, g22;
    RealField a11, a21, a22;
    RealField sqrt_g;

    int dim() const { return grid.dim(); }
};

CoefficientSet flat_coefficients(const TorusGrid& grid);

/// Assemble Cholesky factors and sqrt_g from torus samples of the cometric
/// block and material laws; throws on a non-elliptic block.
CoefficientSet assemble_coefficients(const TorusGrid& grid, RealField eps, RealField mu,
                                     RealField g11, RealField g12, RealField g22);

/// Half-space user inputs, extended evenly onto the torus. 3-d expects the
/// tangential block {g11, g12, g22}; 2-d expects the single entry {g1}.
CoefficientSet geodesic_coefficients(const TorusGrid& grid, const HalfField& eps, const HalfField& mu,
                                     const std::vector<HalfField>& cometric_block);

/// Uniform ellipticity range over all samples: smallest and largest of the
/// material values and metric-block eigenvalues. Throws if not positive.
std::pair<double, double> ellipticity_bounds(const CoefficientSet& c);

/// Conservative material tensors eps' = sqrt_g g^{-1} eps and
/// mu' = sqrt_g g^{-1} mu as per-point symmetric blocks, with inverses.
struct Material3d {
    RealField e11, e12, e22, e33; // eps' block entries ([[e11,e12,0],[e12,e22,0],[0,0,e33]])
    RealField m11, m12, m22, m33; // mu' block
    RealField ie11, ie12, ie22, ie33;
    RealField im11, im12, im22, im33;
};
Material3d conservative_material_3d(const CoefficientSet& c);

struct Material2d {
    RealField e11, e22; // eps' = diag entries sqrt_g * (g1*eps, eps)
    RealField mu_eff;   // sqrt_g * mu
    RealField ie11, ie22, imu;
};
Material2d conservative_material_2d(const CoefficientSet& c);

/// Largest pointwise wave speed ||A|| / sqrt(eps mu), used for CFL limits.
double max_wave_speed(const CoefficientSet& c);

} // namespace maxlab
