#include "maxlab/fields.hpp"

#include <random>

#include "maxlab/spectral.hpp"

namespace maxlab {

std::string FieldState::comp_name(int c) const {
    const int d = dim();
    if (c < d) return "E" + std::to_string(c + 1);
    if (d == 2) return "H";
    return "H" + std::to_string(c - d + 1);
}

FieldState FieldState::zero(const TorusGrid& grid) {
    FieldState s;
    s.grid = grid;
    const int nc = grid.dim() == 3 ? 6 : 3;
    s.comps.assign(static_cast<size_t>(nc), RealField::Zero(grid.size()));
    s.parity = standard_parity_plan(grid.dim());
    return s;
}

std::vector<Parity> standard_parity_plan(int dim) {
    if (dim == 3) {
        // E1, E2 odd, E3 even; H1, H2 even, H3 odd.
        return {Parity::Odd, Parity::Odd, Parity::Even, Parity::Even, Parity::Even, Parity::Odd};
    }
    // E1 odd; E2, H even.
    return {Parity::Odd, Parity::Even, Parity::Even};
}

std::vector<Parity> current_parity_plan(int dim) {
    if (dim == 3) return {Parity::Odd, Parity::Odd, Parity::Even};
    return {Parity::Odd, Parity::Even};
}

Parity charge_parity() { return Parity::Odd; }

RealField mirror_normal(const TorusGrid& grid, const RealField& f) {
    const int axis = grid.normal_axis();
    RealField out(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflat(i);
        idx[static_cast<size_t>(axis)] = grid.mirror(axis, idx[static_cast<size_t>(axis)]);
        out[grid.flat(idx)] = f[i];
    }
    return out;
}

double parity_defect(const TorusGrid& grid, const RealField& f, Parity p) {
    const double scale = f.abs().maxCoeff();
    if (scale == 0.0) return 0.0;
    const RealField m = mirror_normal(grid, f);
    const double dev = p == Parity::Even ? (f - m).abs().maxCoeff() : (f + m).abs().maxCoeff();
    return dev / scale;
}

double parity_defect(const FieldState& state) {
    double worst = 0.0;
    for (int c = 0; c < state.n_comps(); ++c)
        worst = std::max(worst, parity_defect(state.grid, state.comps[static_cast<size_t>(c)],
                                              state.parity[static_cast<size_t>(c)]));
    return worst;
}

RealField symmetrize(const TorusGrid& grid, const RealField& f, Parity p) {
    const RealField m = mirror_normal(grid, f);
    return p == Parity::Even ? RealField(0.5 * (f + m)) : RealField(0.5 * (f - m));
}

RealField random_band_field(const TorusGrid& grid, double band_lo, double band_hi,
                            std::uint64_t seed, Parity p) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealField noise(grid.size());
    for (Index i = 0; i < grid.size(); ++i) noise[i] = gauss(rng);
    RealField banded = apply_multiplier(grid, noise, [&](const Eigen::Vector3d& xi) {
        const double r = xi.norm();
        return (r >= band_lo && r <= band_hi) ? 1.0 : 0.0;
    });
    RealField sym = symmetrize(grid, banded, p);
    const double scale = std::sqrt(sym.square().mean());
    if (scale > 0.0) sym /= scale;
    return sym;
}

FieldState random_state(const TorusGrid& grid, double band_lo, double band_hi, std::uint64_t seed) {
    FieldState s = FieldState::zero(grid);
    for (int c = 0; c < s.n_comps(); ++c)
        s.comps[static_cast<size_t>(c)] = random_band_field(grid, band_lo, band_hi,
                                                            seed + static_cast<std::uint64_t>(c) * 1000003ull,
                                                            s.parity[static_cast<size_t>(c)]);
    return s;
}

} // namespace maxlab
