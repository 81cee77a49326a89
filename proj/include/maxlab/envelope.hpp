#pragma once

#include "maxlab/lp.hpp"

namespace maxlab {

/// Slowly varying dyadic majorant of band-wise H^s energies.
struct FrequencyEnvelope {
    double s = 0.0;
    double delta = 0.0;
    std::vector<double> N;       // dyadic band values
    std::vector<double> c_tilde; // raw band energies ||P_N u||_{H^s}
    std::vector<double> c;       // envelope
};

/// c_N = sup_M min(N/M, M/N)^delta * c~_M with c~_M = ||P_M u||_{H^s}.
FrequencyEnvelope sharp_envelope(const TorusGrid& grid, const RealField& u, double s, double delta,
                                 const DyadicBank* bank = nullptr);
FrequencyEnvelope sharp_envelope(const FieldState& state, double s, double delta);

struct EnvelopeCheck {
    double energy_margin;  // max over N of c~_N - c_N (<= 0 when the energy bound holds)
    double slow_margin;    // max over (J,K) of c_K / (c_J * max(J/K, K/J)^delta) (<= 1 when slowly varying)
    double l2_ratio;       // sum c_N^2 / ||u||_{H^s}^2
    double c_delta;        // the admissible constant sum_k 2^{-2 delta |k|}
};

/// Exhaustive check of both envelope axioms plus the l^2 comparability bound.
EnvelopeCheck verify_envelope(const FrequencyEnvelope& env, double u_sobolev_norm);

void write_envelope_csv(const std::string& path, const FrequencyEnvelope& env);

} // namespace maxlab
