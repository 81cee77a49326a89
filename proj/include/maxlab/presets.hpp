#pragma once

#include "maxlab/coeffs.hpp"
#include "maxlab/fields.hpp"

namespace maxlab {

/// Named coefficient families on the reflected torus. "flat" is vacuum;
/// "waveguide" carries an even, smoothly varying cometric block and
/// permittivity with contrast `contrast` (mu stays 1 so the order-2
/// compatibility simplification applies).
CoefficientSet coefficient_preset(const TorusGrid& grid, const std::string& name, double contrast = 0.5);

struct InitialPreset {
    std::string name = "standing-wave";
    double amplitude = 1.0;
    double band = 8.0;       // frequency scale for random/packet data
    std::uint64_t seed = 1;
};

/// Named parity-correct initial states: zero, standing-wave, wave-packet,
/// random-band, charged-gradient (2-d: nonzero rho_e, chosen here rather than
/// taken from any canonical source).
FieldState initial_state(const TorusGrid& grid, const InitialPreset& preset);

/// Closed-form standing-wave solution with flat coefficients (mode k along
/// the first axis) for solver-accuracy oracles.
FieldState standing_wave_exact(const TorusGrid& grid, int mode, double amplitude, double time);

} // namespace maxlab
