#include "maxlab/reflect.hpp"

#include <cmath>

namespace maxlab {

namespace {
std::array<int, 3> half_extents(const TorusGrid& grid) {
    std::array<int, 3> ext{1, 1, 1};
    const int axis = grid.normal_axis();
    for (int a = 0; a < grid.dim(); ++a)
        ext[static_cast<size_t>(a)] = a == axis ? grid.n(a) / 2 + 1 : grid.n(a);
    return ext;
}
} // namespace

Index HalfField::size() const {
    const auto ext = half_extents(grid);
    Index s = 1;
    for (int a = 0; a < grid.dim(); ++a) s *= ext[static_cast<size_t>(a)];
    return s;
}

Index HalfField::flat(const std::array<int, 3>& idx) const {
    const auto ext = half_extents(grid);
    Index f = idx[0];
    for (int a = 1; a < grid.dim(); ++a) f = f * ext[static_cast<size_t>(a)] + idx[static_cast<size_t>(a)];
    return f;
}

RealField extend_half_to_torus(const HalfField& half, Parity parity, double trace_tol) {
    const TorusGrid& grid = half.grid;
    const int axis = grid.normal_axis();
    const int n_axis = grid.n(axis);

    if (parity == Parity::Odd) {
        const double scale = std::max(1.0, half.values.abs().maxCoeff());
        for (int plane : {0, n_axis / 2}) {
            double worst = 0.0;
            for (Index i = 0; i < half.size(); ++i) {
                Index rem = i;
                std::array<int, 3> idx{0, 0, 0};
                const auto ext = half_extents(grid);
                for (int a = grid.dim() - 1; a >= 0; --a) {
                    idx[static_cast<size_t>(a)] = static_cast<int>(rem % ext[static_cast<size_t>(a)]);
                    rem /= ext[static_cast<size_t>(a)];
                }
                if (idx[static_cast<size_t>(axis)] == plane) worst = std::max(worst, std::abs(half.values[i]));
            }
            if (worst / scale > trace_tol)
                throw InvalidInput("extend_half_to_torus: odd extension incompatible, trace " +
                                   std::to_string(worst / scale) + " on plane x_d = " +
                                   std::to_string(grid.coord(axis, plane)));
        }
    }

    RealField out(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflat(i);
        const int id = idx[static_cast<size_t>(axis)];
        double sign = 1.0;
        auto hidx = idx;
        if (id > n_axis / 2) {
            hidx[static_cast<size_t>(axis)] = n_axis - id;
            if (parity == Parity::Odd) sign = -1.0;
        }
        out[i] = sign * half.values[half.flat(hidx)];
    }
    if (parity == Parity::Odd) {
        // Fixed planes of the reflection hold exact zeros.
        for (Index i = 0; i < grid.size(); ++i) {
            const auto idx = grid.unflat(i);
            const int id = idx[static_cast<size_t>(axis)];
            if (id == 0 || id == n_axis / 2) out[i] = 0.0;
        }
    }
    return out;
}

HalfField restrict_to_half(const TorusGrid& grid, const RealField& f) {
    HalfField h;
    h.grid = grid;
    h.values.resize(h.size());
    const int axis = grid.normal_axis();
    const auto ext = half_extents(grid);
    for (Index i = 0; i < h.size(); ++i) {
        Index rem = i;
        std::array<int, 3> idx{0, 0, 0};
        for (int a = grid.dim() - 1; a >= 0; --a) {
            idx[static_cast<size_t>(a)] = static_cast<int>(rem % ext[static_cast<size_t>(a)]);
            rem /= ext[static_cast<size_t>(a)];
        }
        (void)axis;
        h.values[i] = f[grid.flat(idx)];
    }
    return h;
}

FieldState extend_state(const TorusGrid& grid, const std::vector<HalfField>& half_comps,
                        const std::vector<Parity>& plan, double time) {
    if (half_comps.size() != plan.size())
        throw InvalidInput("extend_state: component/plan size mismatch");
    FieldState state = FieldState::zero(grid);
    if (half_comps.size() != state.comps.size())
        throw InvalidInput("extend_state: wrong number of components for dim " + std::to_string(grid.dim()));
    state.time = time;
    state.parity = plan;
    std::string violations;
    for (size_t c = 0; c < half_comps.size(); ++c) {
        try {
            state.comps[c] = extend_half_to_torus(half_comps[c], plan[c]);
        } catch (const InvalidInput& err) {
            violations += (violations.empty() ? "" : "; ") + state.comp_name(static_cast<int>(c)) +
                          ": " + err.what();
        }
    }
    if (!violations.empty()) throw InvalidInput("extend_state: " + violations);
    return state;
}

double boundary_plane_l2(const TorusGrid& grid, const RealField& f) {
    const int axis = grid.normal_axis();
    double area_element = 1.0;
    for (int a = 0; a < grid.dim(); ++a)
        if (a != axis) area_element *= grid.spacing(a);
    double acc = 0.0;
    for (Index i = 0; i < grid.size(); ++i) {
        if (grid.unflat(i)[static_cast<size_t>(axis)] == 0) acc += f[i] * f[i];
    }
    return std::sqrt(acc * area_element);
}

double strip_sup(const TorusGrid& grid, const RealField& f, double margin) {
    const int axis = grid.normal_axis();
    const double L = grid.length(axis);
    double worst = 0.0;
    for (Index i = 0; i < grid.size(); ++i) {
        double xd = grid.coord(axis, grid.unflat(i)[static_cast<size_t>(axis)]);
        double dist = std::min(xd, L - xd); // torus distance to the x_d = 0 plane
        if (dist < margin) worst = std::max(worst, std::abs(f[i]));
    }
    return worst;
}

} // namespace maxlab
