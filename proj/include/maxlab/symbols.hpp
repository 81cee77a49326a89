#pragma once

#include <functional>

#include "maxlab/lp.hpp"

namespace maxlab {

/// Curl symbol C(xi)_{ij} = -eps_{ijk} xi_k, so that C(xi) v = xi x v.
/// Antisymmetric; C(xi) C(xi)^t = |xi|^2 I - xi xi^t.
Eigen::Matrix3d curl_symbol(const Eigen::Vector3d& xi);

/// Adjugate (transpose cofactor) matrix, defined minor-wise so it exists for
/// singular input as well.
Eigen::Matrix3d adjugate(const Eigen::Matrix3d& B);

/// Frobenius residual of the transformation identity B^t C(xi) B = C(ad(B) xi).
double adjugate_identity_residual(const Eigen::Matrix3d& B, const Eigen::Vector3d& xi);

/// Pointwise coefficient samples entering the symbols.
struct CoeffSample3d {
    double a11, a21, a22; // lower Cholesky factor of the cometric tangential block
    double eps, mu;
    double h; // det(g_ij)^{1/2} = 1/det(A)

    Eigen::Matrix3d A() const;
};
struct CoeffSample2d {
    double e11, e22; // composite permittivity entries sqrt_g g^{-1} eps
    double mu;       // composite sqrt_g mu
};

CoeffSample3d coeff_sample_3d(const CoefficientSet& c, Index point);
CoeffSample3d coeff_sample_3d(const TruncatedCoefficients& tc, Index point); // scheme B only
CoeffSample2d coeff_sample_2d(const CoefficientSet& c, Index point);
CoeffSample2d coeff_sample_2d(const TruncatedCoefficients& tc, Index point);

/// Matrix symbol evaluated pointwise at (grid point, covector (xi0, xi')).
struct SymbolMatrix {
    int dim = 3;
    int rows = 6;
    int degree = 1;
    std::function<Eigen::MatrixXcd(Index point, double xi0, const Eigen::Vector3d& xi)> eval;
};

/// Principal Maxwell symbol with (possibly truncated) variable coefficients.
SymbolMatrix maxwell_symbol(const TorusGrid& grid, const TruncatedCoefficients& tc);
SymbolMatrix maxwell_symbol(const TorusGrid& grid, const CoefficientSet& c);

/// Explicit pointwise symbol assembly (3-d).
Eigen::Matrix<std::complex<double>, 6, 6> maxwell_symbol_3d(const CoeffSample3d& cs, double xi0,
                                                            const Eigen::Vector3d& xi);
Eigen::Matrix3cd maxwell_symbol_2d(const CoeffSample2d& cs, double xi0, const Eigen::Vector2d& xi);

/// Conjugation factors diagonalizing the 3-d symbol on one branch:
/// p = m d n exactly, m_tilde orthonormal, det(m_raw) = (xi_i*)^2.
struct Conjugation3d {
    Eigen::Matrix<double, 6, 6> m_raw;   // plain eigenvector columns
    Eigen::Matrix<double, 6, 6> m_tilde; // orthonormalized columns
    Eigen::Matrix<std::complex<double>, 6, 6> m, d, n;
    Eigen::Vector3d xi_star;   // normalized transformed covector
    double xi_tilde_norm = 0;  // ||A^t xi' / sqrt(eps mu)||
    double branch_coord = 0;   // |xi_star[branch]|
};

/// default_branch_cutoff < 1/sqrt(3), so the three branches overlap and cover the sphere.
inline constexpr double default_branch_cutoff = 0.45;

Conjugation3d conjugation_3d(const CoeffSample3d& cs, double xi0, const Eigen::Vector3d& xi,
                             int branch, double cutoff = default_branch_cutoff);

/// 2-d conjugation: p = m d n with m n = diag(e11, e22, mu) and
/// d = i diag(xi0, xi0 - ||xi||_eps, xi0 + ||xi||_eps).
struct Conjugation2d {
    Eigen::Matrix3cd m, d, n;
    double xi_eps_norm = 0; // ||xi||_{eps'}
};
Conjugation2d conjugation_2d(const CoeffSample2d& cs, double xi0, const Eigen::Vector2d& xi);

/// Phase-space cutoff pi_i(x, xi): annulus bump in |(xi0, xi')| times a branch
/// bump in the normalized transformed coordinate |(A^t xi')_i| / ||A^t xi'||.
double phase_partition(const CoeffSample3d& cs, double lambda, double xi0, const Eigen::Vector3d& xi,
                       int branch, double cutoff = default_branch_cutoff);

struct FactorizationSweep {
    double max_residual = 0.0;       // max over samples of ||p pi - m d n pi||_F
    double max_ortho_defect = 0.0;   // max over samples of ||m_tilde^t m_tilde - I||_F
    long n_samples = 0;
};

/// Pointwise factorization residual over random (x, xi) samples on the
/// lambda-annulus within the branch cutoff; per-branch results.
std::vector<FactorizationSweep> factorization_residual_3d(const TorusGrid& grid,
                                                          const TruncatedCoefficients& tc, double lambda,
                                                          long samples_per_branch, std::uint64_t seed);
FactorizationSweep factorization_residual_2d(const TorusGrid& grid, const TruncatedCoefficients& tc,
                                             double lambda, long samples, std::uint64_t seed);

/// Dense standard quantization a(x, D) f on small grids (cost O(points^2)).
/// Throws when the grid exceeds max_points.
RealField quantize(const TorusGrid& grid, const std::function<std::complex<double>(Index, const Eigen::Vector3d&)>& symbol,
                   const RealField& f, Index max_points = 8192);

} // namespace maxlab
