#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxlab/grid.hpp"
#include "maxlab/fft.hpp"

namespace maxlab {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// Electromagnetic state on a torus: d electric components followed by the
/// magnetic components (3 in 3d, 1 in 2d), each tagged with its parity across
/// the normal axis.
struct FieldState {
    double time = 0.0;
    TorusGrid grid;
    std::vector<RealField> comps;
    std::vector<Parity> parity;

    int dim() const { return grid.dim(); }
    int n_electric() const { return dim(); }
    int n_magnetic() const { return dim() == 3 ? 3 : 1; }
    int n_comps() const { return n_electric() + n_magnetic(); }

    RealField& E(int i) { return comps[static_cast<size_t>(i)]; }
    const RealField& E(int i) const { return comps[static_cast<size_t>(i)]; }
    RealField& H(int i = 0) { return comps[static_cast<size_t>(n_electric() + i)]; }
    const RealField& H(int i = 0) const { return comps[static_cast<size_t>(n_electric() + i)]; }

    std::string comp_name(int c) const;

    static FieldState zero(const TorusGrid& grid);
};

/// Parity plan of the reflected Maxwell system (per component), plus the
/// all-even plan used for coefficients.
std::vector<Parity> standard_parity_plan(int dim);
std::vector<Parity> current_parity_plan(int dim); // J_e components
Parity charge_parity();                           // rho_e

/// Mirror a field across the normal axis: out(x', x_d) = f(x', -x_d).
RealField mirror_normal(const TorusGrid& grid, const RealField& f);

/// Largest relative deviation from the declared parity (sup norm, scaled by sup|f|; 0 for zero fields).
double parity_defect(const TorusGrid& grid, const RealField& f, Parity p);
double parity_defect(const FieldState& state);

/// Projection onto the declared parity: (f(x) +/- f(mirror x))/2.
RealField symmetrize(const TorusGrid& grid, const RealField& f, Parity p);

/// Random real field with spectrum supported in band_lo <= |xi| <= band_hi,
/// symmetrized to the requested parity. Deterministic in `seed`.
RealField random_band_field(const TorusGrid& grid, double band_lo, double band_hi,
                            std::uint64_t seed, Parity p);

/// Random parity-correct state with unit H^1-scale amplitude, bands [lo, hi].
FieldState random_state(const TorusGrid& grid, double band_lo, double band_hi, std::uint64_t seed);

} // namespace maxlab
