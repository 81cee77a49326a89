#pragma once

#include "maxlab/coeffs.hpp"
#include "maxlab/fields.hpp"

namespace maxlab {

/// Smooth cutoff profile: 1 for r <= 1, 0 for r >= 2, C-infinity in between.
double smooth_step_down(double r);

/// Inhomogeneous dyadic projector bank over the spatial frequency lattice.
///
/// Bands lambda = 1 (low ball), 2, 4, ..., lambda_top; the top band absorbs
/// the remainder so that the bank sums to the identity exactly at every
/// lattice point. All multipliers are radial and real, so every projector
/// preserves realness and parity.
class DyadicBank {
public:
    explicit DyadicBank(const TorusGrid& grid);

    int n_bands() const { return static_cast<int>(lambdas_.size()); }
    double lambda(int band) const { return lambdas_[static_cast<size_t>(band)]; }
    int band_of(double lambda) const;

    /// chi_band evaluated at radius r.
    double weight(int band, double r) const;

    RealField apply(const RealField& f, int band) const;
    /// Mildly enlarged projector around the same annulus (equals 1 on the band support).
    RealField apply_enlarged(const RealField& f, int band) const;

    /// Band-wise L^2 energies (for spectra dumps).
    std::vector<double> band_l2(const RealField& f) const;

    const TorusGrid& grid() const { return grid_; }

private:
    TorusGrid grid_;
    std::vector<double> lambdas_;
    std::vector<RealField> cached_; // per-band multiplier over the half spectrum
    std::vector<RealField> cached_enlarged_;
};

/// Smooth low-pass: identity on |xi| <= M, zero beyond 2M.
RealField lowpass(const TorusGrid& grid, const RealField& f, double M);

/// Dyadic projections of a uniformly sampled time series (same profile, 1-d).
Eigen::ArrayXd project_temporal(const Eigen::ArrayXd& series, double t_span, double lambda);

/// Joint space-time dyadic projection of a stored history (2-d space only;
/// slices at uniform dt spanning t_span).
std::vector<RealField> project_spacetime(const TorusGrid& grid, const std::vector<RealField>& slices,
                                         double t_span, double lambda);

enum class TruncationScheme { A, B };

/// Composite conservative tensors after paradifferential truncation at lambda.
/// Scheme A truncates eps' = sqrt_g g^{-1} eps and mu' entrywise at lambda/16;
/// scheme B truncates the factors (A, eps, mu) below lambda/8 and recomposes
/// with h = det(A_trunc)^{-1}.
struct TruncatedCoefficients {
    TruncationScheme scheme;
    double lambda = 0.0;
    // composite blocks, 3-d layout ([[t11,t12,0],[t12,t22,0],[0,0,t33]]); 2-d uses e11, e22, m33
    RealField e11, e12, e22, e33;
    RealField m11, m12, m22, m33;
    // scheme-B factors (empty for scheme A)
    RealField a11, a21, a22, eps, mu, h;
};
TruncatedCoefficients truncate_coefficients(const CoefficientSet& c, double lambda, TruncationScheme scheme);

/// Power-iteration estimate of || [kappa_trunc, S'_band] ||_{L^2 -> L^2} where
/// kappa_trunc is the scheme-A truncation of kappa at the band's lambda.
double commutator_decay(const TorusGrid& grid, const RealField& kappa, const DyadicBank& bank,
                        int band, std::uint64_t seed = 17, int iterations = 24);

/// Dyadic Besov norm (sum_N N^{2 rho} ||P_N kappa||_infty^2)^{1/2}, low band included.
double besov_norm(const TorusGrid& grid, const RealField& kappa, double rho);

/// Tensor Gaussian mollifier at scale n; the kernel is even, nonnegative and
/// unit mass, so parity and boundary conditions survive exactly.
RealField mollify(const TorusGrid& grid, const RealField& f, double n);

/// Mollify a reflected state. Electric components must vanish on the strip
/// within distance 2/n of the boundary plane (checked; throws otherwise).
FieldState mollify_preserving_bc(const FieldState& state, double n);

} // namespace maxlab
