#pragma once

#include "maxlab/evolution.hpp"

namespace maxlab {

/// Smooth plateau cutoff on a circle of circumference L: exactly band-limited
/// (Gaussian-smoothed indicator computed from its Fourier series), centered at
/// L/2 with plateau half-width `radius` and transition scale `sigma`.
Eigen::ArrayXd plateau_profile(int n, double L, double radius, double sigma);

struct CylinderLift {
    TorusGrid grid3;          // axes (x1, cylinder, x2); the 2-d normal axis stays last
    FieldState state3;        // lifted initial data
    Eigen::ArrayXd profile;   // plateau values along the cylinder axis
    int plane_index = 0;      // cylinder index of the comparison plane (plateau center)
};

/// Lift a 2-d state onto the cylinder: E = phi(y2) (E1, 0, E2),
/// H = phi(y2) (0, -H, 0) in the permuted axes, preserving the parity plan.
CylinderLift cylindrical_lift(const FieldState& state2, int n_cyl, double cyl_length,
                              double plateau_radius, double sigma);

struct CylinderReport {
    std::vector<double> times;
    std::vector<double> discrepancy_l2;   // plane restriction vs 2-d run
    double max_discrepancy = 0.0;
    double plateau_derivative_t0 = 0.0;   // max |d_cyl field| over the plateau at t = 0
    double dt = 0.0;
};

/// Run the lifted 3-d system and the 2-d system side by side with identical dt
/// (flat coefficients) and compare on the central plane.
CylinderReport cylindrical_lift_and_compare(const FieldState& state2, const EvolutionConfig& config,
                                            int n_cyl, double cyl_length, double plateau_radius,
                                            double sigma, double check_radius);

} // namespace maxlab
