#pragma once

#include "maxlab/fields.hpp"

namespace maxlab {

/// Samples on the closed half torus x_d in [0, L_d/2]: the full grid layout
/// with the normal axis cut to n/2 + 1 planes (both fixed planes included).
struct HalfField {
    TorusGrid grid; // the full torus the half field extends into
    RealField values;

    Index size() const;
    Index flat(const std::array<int, 3>& idx) const;

    /// Sample a callable f(x) given per-axis coordinates.
    template <typename Fn>
    static HalfField sample(const TorusGrid& grid, Fn&& f) {
        HalfField h;
        h.grid = grid;
        h.values.resize(h.size());
        const int axis = grid.normal_axis();
        std::array<int, 3> idx{0, 0, 0};
        const int n_half = grid.n(axis) / 2 + 1;
        std::array<int, 3> ext{1, 1, 1};
        for (int a = 0; a < grid.dim(); ++a) ext[static_cast<size_t>(a)] = a == axis ? n_half : grid.n(a);
        for (Index i = 0; i < h.size(); ++i) {
            Index rem = i;
            for (int a = grid.dim() - 1; a >= 0; --a) {
                idx[static_cast<size_t>(a)] = static_cast<int>(rem % ext[static_cast<size_t>(a)]);
                rem /= ext[static_cast<size_t>(a)];
            }
            Eigen::Vector3d x = Eigen::Vector3d::Zero();
            for (int a = 0; a < grid.dim(); ++a) x[a] = grid.coord(a, idx[static_cast<size_t>(a)]);
            h.values[i] = f(x);
        }
        return h;
    }
};

/// Even/odd reflection of a half field onto the full torus. Odd extensions
/// require a vanishing trace on both fixed planes (x_d = 0 and x_d = L/2).
RealField extend_half_to_torus(const HalfField& half, Parity parity, double trace_tol = 1e-10);

/// Restriction back onto the half torus; inverse of extend_half_to_torus on grid points.
HalfField restrict_to_half(const TorusGrid& grid, const RealField& f);

/// Extend a state sampled on the half torus, one component at a time, with the
/// given parity plan; the result carries the plan as tags.
FieldState extend_state(const TorusGrid& grid, const std::vector<HalfField>& half_comps,
                        const std::vector<Parity>& plan, double time = 0.0);

/// L^2 norm over the x_d = 0 boundary plane of a torus field.
double boundary_plane_l2(const TorusGrid& grid, const RealField& f);
/// Max norm over grid points with |x_d| < margin (distance measured on the torus).
double strip_sup(const TorusGrid& grid, const RealField& f, double margin);

} // namespace maxlab
