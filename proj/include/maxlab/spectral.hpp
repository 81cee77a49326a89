#pragma once

#include <functional>

#include "maxlab/fft.hpp"

namespace maxlab {

/// Visit every stored mode: fn(flat complex index, signed wavenumbers, physical xi, parseval weight).
template <typename Fn>
void for_each_mode(const TorusGrid& grid, Fn&& fn) {
    const SpectralLayout layout(grid);
    for (Index idx = 0; idx < layout.size; ++idx) {
        const auto k = layout.wavenumbers(idx);
        Eigen::Vector3d xi = Eigen::Vector3d::Zero();
        for (int a = 0; a < grid.dim(); ++a) xi[a] = grid.xi(a, k[static_cast<size_t>(a)]);
        fn(idx, k, xi, layout.parseval_weight(k));
    }
}

/// Apply a real multiplier m(xi) acting on the spectrum. Even real multipliers
/// preserve realness and parity exactly.
RealField apply_multiplier(const TorusGrid& grid, const RealField& f,
                           const std::function<double(const Eigen::Vector3d&)>& m);

/// Spectral partial derivative along `axis`. Nyquist modes of the
/// differentiated axis are zeroed (the usual convention for odd multipliers).
RealField derivative(const TorusGrid& grid, const RealField& f, int axis);

/// Pointwise max-norm of the spatial gradient magnitude.
double grad_sup_norm(const TorusGrid& grid, const RealField& f);

/// curl for 3 components on a 3-d grid (spectral).
std::array<RealField, 3> curl3(const TorusGrid& grid, const std::array<const RealField*, 3>& v);
/// Scalar 2-d curl (d1 v2 - d2 v1).
RealField curl2(const TorusGrid& grid, const RealField& v1, const RealField& v2);
/// perp gradient (d2 h, -d1 h).
std::array<RealField, 2> perp_grad(const TorusGrid& grid, const RealField& h);
/// Divergence of a d-component field.
RealField divergence(const TorusGrid& grid, const std::vector<const RealField*>& v);

} // namespace maxlab
