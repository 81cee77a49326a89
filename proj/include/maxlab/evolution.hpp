#pragma once

#include <optional>

#include "maxlab/coeffs.hpp"
#include "maxlab/fields.hpp"

namespace maxlab {

struct EvolutionConfig {
    double cfl = 0.4;                // fraction of spacing / max wave speed
    std::optional<double> dt_override;
    double T = 1.0;
    enum class Integrator { Leapfrog, Rk4 } integrator = Integrator::Leapfrog;
    enum class Nonlinearity { None, Kerr2d } nonlinearity = Nonlinearity::None;
    int sample_every = 1; // history sampling stride in steps
    bool store_states = true;
    /// Electric current J_e(t) as d components; must follow the current parity
    /// plan with vanishing normal trace (checked at t = 0). Null: homogeneous.
    std::function<std::vector<RealField>(double t)> forcing;

    void validate(int dim) const;
    double pick_dt(const TorusGrid& grid, double max_speed) const;
};

/// Synchronized samples plus per-step conserved quantities of one run.
struct RunHistory {
    double dt = 0.0;
    long steps = 0;
    std::vector<double> times;
    std::vector<FieldState> states;     // present when store_states
    std::vector<double> energy;         // discrete leapfrog invariant (RK4: plain quadratic form)
    std::vector<double> charge_l2;      // ||rho_e(t)||_{L^2}
    std::vector<double> energy_m;       // plenary quadrature of D.E + H.B (torus / 2)

    double energy_drift() const;
    double charge_drift() const;
};

/// One synchronized step of the linear system in conservative variables
/// (kick-drift-kick for leapfrog; classical RK4 otherwise).
FieldState step_linear(const FieldState& state, const CoefficientSet& coeffs, const EvolutionConfig& config);

/// Full linear run over [state.time, state.time + T].
RunHistory run_linear(const FieldState& initial, const CoefficientSet& coeffs, const EvolutionConfig& config);

/// Electric field magnitude from displacement magnitude: the unique real root
/// of e^3 + e = d (monotone cubic).
double kerr_field_magnitude(double d);

/// Pointwise inversion D -> E of D = (1 + |E|^2) E.
void kerr_invert(const RealField& d1, const RealField& d2, RealField& e1, RealField& e2);

/// Effective permittivity entries of 1 + |E|^2 + 2 E (x) E.
struct EffectivePermittivity2d {
    RealField m11, m12, m22;
};
EffectivePermittivity2d effective_permittivity(const TorusGrid& grid, const RealField& e1, const RealField& e2);
Eigen::Matrix2d effective_permittivity(const Eigen::Vector2d& e);

/// One synchronized Kerr step (2-d, vacuum background).
FieldState step_kerr_2d(const FieldState& state, const EvolutionConfig& config);
RunHistory run_kerr_2d(const FieldState& initial, const EvolutionConfig& config);

/// Charge rho_e: spectral divergence of the conservative displacement
/// (sqrt_g g^{-1} eps E in the linear case, (1+|E|^2) E for Kerr).
RealField charge(const FieldState& state, const CoefficientSet& coeffs);
RealField kerr_charge(const FieldState& state);

} // namespace maxlab
