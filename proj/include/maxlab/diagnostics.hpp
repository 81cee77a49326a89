#pragma once

#include <optional>

#include "maxlab/evolution.hpp"
#include "maxlab/norms.hpp"

namespace maxlab {

/// Wave-admissible space-time exponent triple with the derivative scaling
/// gamma = d (1/2 - 1/q) - 1/p and the loss budget delta_max (3/q in 3-d,
/// 1/2 in 2-d).
struct AdmissibleTriple {
    double p = 2.0;
    double q = 2.0;
    double gamma = 0.0;
    double delta_max = 0.0;
    int dim = 3;
};

/// Checks 3/p + 2/q <= 1 (3-d) or 3/p + 1/q <= 1/2 (2-d) with p, q >= 2 and
/// q finite; on rejection returns the violated inequality.
struct AdmissibilityResult {
    std::optional<AdmissibleTriple> triple;
    std::string rejection;
    bool ok() const { return triple.has_value(); }
};
AdmissibilityResult admissible(double p, double q, int dim);

/// Energy functional M(t): quadrature of D.E + H.B over the half grid
/// (torus integral halved).
double energy_M(const FieldState& state, const CoefficientSet& coeffs);

/// Time series of the bootstrap functionals built from centered finite
/// differences on a stored history.
struct BootstrapSeries {
    std::vector<double> times; // interior sample times (stencil width trimmed)
    std::vector<double> a1;
    std::vector<double> a2;
    std::vector<double> b;          // ||d_x (E,H)||_inf + ||(E,H)||_{H^2}
    std::vector<double> dxu_sup;    // space-time derivative sup norm
    double gronwall_c = 0.0;        // measured constant in A1(t) <= A1(0) exp(C int ||d u||_inf)
};
BootstrapSeries bootstrap_functionals(const RunHistory& history, bool kerr);

/// Curl/div/L^2 against full-gradient control.
struct HelmholtzRatio {
    double lhs = 0.0;   // H^{s+1} norm
    double rhs = 0.0;   // curl + div + L^2
    double ratio = 0.0;
    double identity_defect = 0.0; // torus mode: | ||curl||^2 + ||div||^2 - ||grad||^2 | / ||grad||^2
};
enum class HelmholtzMode { Torus, Half };
HelmholtzRatio helmholtz_ratio(const TorusGrid& grid, const std::vector<const RealField*>& e_comps,
                               double s, HelmholtzMode mode);

/// Measured Strichartz quotient ||u||_{L^p_T L^q} / (||u(0)||_{H^{gamma+delta}}
/// + ||rho_e(0)||_{H^{gamma-1+1/p+delta}}). Rejects zero data.
double strichartz_ratio(const RunHistory& history, const AdmissibleTriple& triple, double delta,
                        double rho0_sobolev, double rho0_sobolev_homogeneous = -1.0);

} // namespace maxlab
