#include "maxlab/symbols.hpp"

#include <random>

namespace maxlab {

Eigen::Matrix3d curl_symbol(const Eigen::Vector3d& xi) {
    Eigen::Matrix3d c;
    c << 0.0, -xi[2], xi[1], xi[2], 0.0, -xi[0], -xi[1], xi[0], 0.0;
    return c;
}

Eigen::Matrix3d adjugate(const Eigen::Matrix3d& B) {
    Eigen::Matrix3d adj;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // (j, i) minor with checkerboard sign
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            double minor = B(r0, c0) * B(r1, c1) - B(r0, c1) * B(r1, c0);
            adj(i, j) = minor; // cyclic index choice absorbs the (-1)^{i+j} sign
        }
    }
    return adj;
}

double adjugate_identity_residual(const Eigen::Matrix3d& B, const Eigen::Vector3d& xi) {
    const Eigen::Matrix3d lhs = B.transpose() * curl_symbol(xi) * B;
    const Eigen::Matrix3d rhs = curl_symbol(adjugate(B) * xi);
    return (lhs - rhs).norm();
}

Eigen::Matrix3d CoeffSample3d::A() const {
    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    a(0, 0) = a11;
    a(1, 0) = a21;
    a(1, 1) = a22;
    a(2, 2) = 1.0;
    return a;
}

CoeffSample3d coeff_sample_3d(const CoefficientSet& c, Index point) {
    return {c.a11[point], c.a21[point], c.a22[point], c.eps[point], c.mu[point], c.sqrt_g[point]};
}

CoeffSample3d coeff_sample_3d(const TruncatedCoefficients& tc, Index point) {
    if (tc.a11.size() == 0)
        throw InvalidInput("coeff_sample_3d: factor access requires scheme B truncation");
    return {tc.a11[point], tc.a21[point], tc.a22[point], tc.eps[point], tc.mu[point], tc.h[point]};
}

CoeffSample2d coeff_sample_2d(const CoefficientSet& c, Index point) {
    const double h = c.sqrt_g[point];
    return {h * c.g11[point] * c.eps[point], h * c.eps[point], h * c.mu[point]};
}

CoeffSample2d coeff_sample_2d(const TruncatedCoefficients& tc, Index point) {
    return {tc.e11[point], tc.e22[point], tc.m33[point]};
}

Eigen::Matrix<std::complex<double>, 6, 6> maxwell_symbol_3d(const CoeffSample3d& cs, double xi0,
                                                            const Eigen::Vector3d& xi) {
    const Eigen::Matrix3d A = cs.A();
    const Eigen::Matrix3d AAT = A * A.transpose();
    const Eigen::Matrix3d C = curl_symbol(xi);
    Eigen::Matrix<double, 6, 6> p = Eigen::Matrix<double, 6, 6>::Zero();
    p.topLeftCorner<3, 3>() = xi0 * cs.h * AAT * cs.eps;
    p.topRightCorner<3, 3>() = -C;
    p.bottomLeftCorner<3, 3>() = C;
    p.bottomRightCorner<3, 3>() = xi0 * cs.h * AAT * cs.mu;
    return std::complex<double>(0.0, 1.0) * p;
}

Eigen::Matrix3cd maxwell_symbol_2d(const CoeffSample2d& cs, double xi0, const Eigen::Vector2d& xi) {
    Eigen::Matrix3d p;
    p << xi0 * cs.e11, 0.0, -xi[1], 0.0, xi0 * cs.e22, xi[0], -xi[1], xi[0], xi0 * cs.mu;
    return std::complex<double>(0.0, 1.0) * p;
}

SymbolMatrix maxwell_symbol(const TorusGrid& grid, const TruncatedCoefficients& tc) {
    SymbolMatrix s;
    s.dim = grid.dim();
    s.rows = s.dim == 3 ? 6 : 3;
    s.degree = 1;
    if (s.dim == 3) {
        s.eval = [tc](Index point, double xi0, const Eigen::Vector3d& xi) -> Eigen::MatrixXcd {
            // assemble from composite blocks so scheme A works too
            Eigen::Matrix3d E, M;
            E << tc.e11[point], tc.e12[point], 0.0, tc.e12[point], tc.e22[point], 0.0, 0.0, 0.0, tc.e33[point];
            M << tc.m11[point], tc.m12[point], 0.0, tc.m12[point], tc.m22[point], 0.0, 0.0, 0.0, tc.m33[point];
            const Eigen::Matrix3d C = curl_symbol(xi);
            Eigen::Matrix<double, 6, 6> p = Eigen::Matrix<double, 6, 6>::Zero();
            p.topLeftCorner<3, 3>() = xi0 * E;
            p.topRightCorner<3, 3>() = -C;
            p.bottomLeftCorner<3, 3>() = C;
            p.bottomRightCorner<3, 3>() = xi0 * M;
            return std::complex<double>(0.0, 1.0) * p;
        };
    } else {
        s.eval = [tc](Index point, double xi0, const Eigen::Vector3d& xi) -> Eigen::MatrixXcd {
            return maxwell_symbol_2d(coeff_sample_2d(tc, point), xi0, xi.head<2>());
        };
    }
    return s;
}

SymbolMatrix maxwell_symbol(const TorusGrid& grid, const CoefficientSet& c) {
    SymbolMatrix s;
    s.dim = grid.dim();
    s.rows = s.dim == 3 ? 6 : 3;
    s.degree = 1;
    if (s.dim == 3) {
        s.eval = [c](Index point, double xi0, const Eigen::Vector3d& xi) -> Eigen::MatrixXcd {
            return maxwell_symbol_3d(coeff_sample_3d(c, point), xi0, xi);
        };
    } else {
        s.eval = [c](Index point, double xi0, const Eigen::Vector3d& xi) -> Eigen::MatrixXcd {
            return maxwell_symbol_2d(coeff_sample_2d(c, point), xi0, xi.head<2>());
        };
    }
    return s;
}

namespace {

// The two transverse base vectors used on a branch; both have squared norm
// bounded below by xi_star[branch]^2.
std::pair<Eigen::Vector3d, Eigen::Vector3d> branch_tangents(const Eigen::Vector3d& s, int branch) {
    const Eigen::Vector3d p1(0.0, -s[2], s[1]);
    const Eigen::Vector3d p2(s[2], 0.0, -s[0]);
    const Eigen::Vector3d p3(-s[1], s[0], 0.0);
    switch (branch) {
        case 0: return {p2, p3};
        case 1: return {p1, p3};
        case 2: return {p1, p2};
        default: throw InvalidInput("branch must be 0, 1 or 2");
    }
}

} // namespace

Conjugation3d conjugation_3d(const CoeffSample3d& cs, double xi0, const Eigen::Vector3d& xi,
                             int branch, double cutoff) {
    Conjugation3d out;
    const Eigen::Matrix3d A = cs.A();
    const Eigen::Vector3d xi_t = A.transpose() * xi / std::sqrt(cs.eps * cs.mu);
    out.xi_tilde_norm = xi_t.norm();
    if (out.xi_tilde_norm == 0.0) throw InvalidInput("conjugation_3d: xi' must be nonzero");
    const Eigen::Vector3d s = xi_t / out.xi_tilde_norm;
    out.xi_star = s;
    out.branch_coord = std::abs(s[branch]);
    if (out.branch_coord < cutoff)
        throw InvalidInput("conjugation_3d: branch coordinate " + std::to_string(out.branch_coord) +
                           " below cutoff " + std::to_string(cutoff));

    const Eigen::Matrix3d Cs = curl_symbol(s);
    const auto [ap, aq] = branch_tangents(s, branch);

    auto column = [&](const Eigen::Vector3d& e, const Eigen::Vector3d& h) {
        Eigen::Matrix<double, 6, 1> w;
        w << e, h;
        return w;
    };
    // transverse eigenvector pairs (a, +/- C a) carry the half-wave modes; the
    // pair normalization 1/sqrt(2) and one sign fix the determinant to xi_i*^2
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    out.m_raw.col(0) = column(s, Eigen::Vector3d::Zero());
    out.m_raw.col(1) = column(Eigen::Vector3d::Zero(), s);
    out.m_raw.col(2) = inv_rt2 * column(ap, Cs * ap);
    out.m_raw.col(3) = inv_rt2 * column(ap, -Cs * ap);
    out.m_raw.col(4) = inv_rt2 * column(aq, Cs * aq);
    out.m_raw.col(5) = inv_rt2 * column(-aq, Cs * aq);

    // orthonormalize: only same-eigenvalue pairs (cols 2/4 and 3/5) interact
    out.m_tilde = out.m_raw;
    for (int c : {2, 3, 4, 5}) out.m_tilde.col(c).normalize();
    for (auto [first, second] : {std::pair<int, int>{2, 4}, std::pair<int, int>{3, 5}}) {
        Eigen::Matrix<double, 6, 1> v = out.m_tilde.col(second);
        v -= out.m_tilde.col(first).dot(v) * out.m_tilde.col(first);
        out.m_tilde.col(second) = v.normalized();
    }

    const double nrm = out.xi_tilde_norm;
    Eigen::Matrix<double, 6, 1> eigs;
    eigs << xi0, xi0, xi0 + nrm, xi0 - nrm, xi0 + nrm, xi0 - nrm;
    out.d = (std::complex<double>(0.0, 1.0) * eigs).asDiagonal();

    Eigen::Matrix<double, 6, 6> left = Eigen::Matrix<double, 6, 6>::Zero();
    left.topLeftCorner<3, 3>() = A * std::sqrt(cs.eps);
    left.bottomRightCorner<3, 3>() = A * std::sqrt(cs.mu);
    out.m = (cs.h * left * out.m_tilde).cast<std::complex<double>>();
    out.n = (out.m_tilde.transpose() * left.transpose()).cast<std::complex<double>>();
    return out;
}

Conjugation2d conjugation_2d(const CoeffSample2d& cs, double xi0, const Eigen::Vector2d& xi) {
    Conjugation2d out;
    const double norm2 = (xi[0] * xi[0] / cs.e22 + xi[1] * xi[1] / cs.e11) / cs.mu;
    if (norm2 <= 0.0) throw InvalidInput("conjugation_2d: xi' must be nonzero");
    const double nrm = std::sqrt(norm2);
    out.xi_eps_norm = nrm;
    const double s1 = xi[0] / nrm, s2 = xi[1] / nrm;
    const double ie11 = 1.0 / cs.e11, ie22 = 1.0 / cs.e22, imu = 1.0 / cs.mu;

    Eigen::Matrix3d m, n0;
    m << ie22 * s1, -s2 * imu, s2 * imu,
         ie11 * s2, s1 * imu, -s1 * imu,
         0.0, -1.0, -1.0;
    n0 << imu * s1, imu * s2, 0.0,
          -s2 * ie11 / 2.0, s1 * ie22 / 2.0, -0.5,
          s2 * ie11 / 2.0, -s1 * ie22 / 2.0, -0.5;
    const Eigen::Matrix3d scale = Eigen::Vector3d(cs.e11, cs.e22, cs.mu).asDiagonal();
    out.m = m.cast<std::complex<double>>();
    out.n = (n0 * scale).cast<std::complex<double>>();
    out.d = (std::complex<double>(0.0, 1.0) * Eigen::Vector3d(xi0, xi0 - nrm, xi0 + nrm)).asDiagonal();
    return out;
}

double phase_partition(const CoeffSample3d& cs, double lambda, double xi0, const Eigen::Vector3d& xi,
                       int branch, double cutoff) {
    const double r = std::sqrt(xi0 * xi0 + xi.squaredNorm());
    // annulus bump chi(|(xi0, xi')| / lambda), supported in [lambda/2, 2 lambda]
    const double chi = smooth_step_down(r / lambda) - smooth_step_down(2.0 * r / lambda);
    const Eigen::Vector3d xi_t = cs.A().transpose() * xi;
    const double n = xi_t.norm();
    if (n == 0.0) return 0.0;
    const double u = std::abs(xi_t[branch]) / n;
    const double hi = 1.0 / std::sqrt(3.0);
    if (u <= cutoff) return 0.0;
    if (u >= hi) return chi;
    return chi * (1.0 - smooth_step_down(1.0 + (u - cutoff) / (hi - cutoff)));
}

std::vector<FactorizationSweep> factorization_residual_3d(const TorusGrid& grid,
                                                          const TruncatedCoefficients& tc, double lambda,
                                                          long samples_per_branch, std::uint64_t seed) {
    if (samples_per_branch <= 0) throw InvalidInput("factorization_residual_3d: empty sample set");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<Index> point_dist(0, grid.size() - 1);
    std::vector<FactorizationSweep> out(3);
    for (int branch = 0; branch < 3; ++branch) {
        FactorizationSweep& sweep = out[static_cast<size_t>(branch)];
        while (sweep.n_samples < samples_per_branch) {
            const Index point = point_dist(rng);
            Eigen::Vector3d dir(unif(rng), unif(rng), unif(rng));
            if (dir.norm() < 1e-6) continue;
            dir.normalize();
            const double radius = lambda * (0.75 + 0.5 * std::abs(unif(rng)));
            const Eigen::Vector3d xi = radius * dir;
            const double xi0 = 0.5 * lambda * unif(rng);
            const CoeffSample3d cs = coeff_sample_3d(tc, point);
            Conjugation3d conj;
            try {
                conj = conjugation_3d(cs, xi0, xi, branch);
            } catch (const InvalidInput&) {
                continue; // outside the branch cutoff
            }
            const double pi = phase_partition(cs, lambda, xi0, xi, branch);
            const Eigen::MatrixXcd p = maxwell_symbol_3d(cs, xi0, xi);
            const double residual = (p * pi - conj.m * conj.d * conj.n * pi).norm();
            const double defect = (conj.m_tilde.transpose() * conj.m_tilde -
                                   Eigen::Matrix<double, 6, 6>::Identity()).norm();
            sweep.max_residual = std::max(sweep.max_residual, residual);
            sweep.max_ortho_defect = std::max(sweep.max_ortho_defect, defect);
            ++sweep.n_samples;
        }
    }
    return out;
}

FactorizationSweep factorization_residual_2d(const TorusGrid& grid, const TruncatedCoefficients& tc,
                                             double lambda, long samples, std::uint64_t seed) {
    if (samples <= 0) throw InvalidInput("factorization_residual_2d: empty sample set");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<Index> point_dist(0, grid.size() - 1);
    FactorizationSweep sweep;
    while (sweep.n_samples < samples) {
        const Index point = point_dist(rng);
        Eigen::Vector2d dir(unif(rng), unif(rng));
        if (dir.norm() < 1e-6) continue;
        dir.normalize();
        const Eigen::Vector2d xi = lambda * (0.75 + 0.5 * std::abs(unif(rng))) * dir;
        const double xi0 = 0.5 * lambda * unif(rng);
        const CoeffSample2d cs = coeff_sample_2d(tc, point);
        const Conjugation2d conj = conjugation_2d(cs, xi0, xi);
        const Eigen::Matrix3cd p = maxwell_symbol_2d(cs, xi0, xi);
        sweep.max_residual = std::max(sweep.max_residual, (p - conj.m * conj.d * conj.n).norm());
        ++sweep.n_samples;
    }
    return sweep;
}

RealField quantize(const TorusGrid& grid,
                   const std::function<std::complex<double>(Index, const Eigen::Vector3d&)>& symbol,
                   const RealField& f, Index max_points) {
    if (grid.size() > max_points)
        throw InvalidInput("quantize: grid has " + std::to_string(grid.size()) +
                           " points, beyond the configured dense-quantization limit of " +
                           std::to_string(max_points));
    const Fft& fft = fft_for(grid);
    const Spectrum s = fft.forward(f);
    const SpectralLayout& layout = fft.layout();
    const double scale = 1.0 / static_cast<double>(grid.size());

    // gather the full mode list (unfold the conjugate half)
    struct Mode {
        Eigen::Vector3d xi;
        std::array<int, 3> k;
        std::complex<double> coeff;
    };
    std::vector<Mode> modes;
    modes.reserve(static_cast<size_t>(grid.size()));
    for (Index idx = 0; idx < layout.size; ++idx) {
        const auto k = layout.wavenumbers(idx);
        Eigen::Vector3d xi = Eigen::Vector3d::Zero();
        for (int a = 0; a < grid.dim(); ++a) xi[a] = grid.xi(a, k[static_cast<size_t>(a)]);
        modes.push_back({xi, k, s[idx] * scale});
        const int klast = k[static_cast<size_t>(grid.dim() - 1)];
        const int nlast = grid.n(grid.normal_axis());
        if (klast != 0 && klast != nlast / 2) {
            Mode conj;
            for (int a = 0; a < grid.dim(); ++a) conj.k[static_cast<size_t>(a)] = -k[static_cast<size_t>(a)];
            conj.xi = -xi;
            conj.coeff = std::conj(s[idx]) * scale;
            modes.push_back(conj);
        }
    }

    RealField out(grid.size());
    for (Index j = 0; j < grid.size(); ++j) {
        const auto pidx = grid.unflat(j);
        std::complex<double> acc = 0.0;
        for (const Mode& mode : modes) {
            double phase = 0.0;
            for (int a = 0; a < grid.dim(); ++a)
                phase += 2.0 * EIGEN_PI * mode.k[static_cast<size_t>(a)] * pidx[static_cast<size_t>(a)] /
                         grid.n(a);
            acc += symbol(j, mode.xi) * mode.coeff * std::exp(std::complex<double>(0.0, phase));
        }
        out[j] = acc.real();
    }
    return out;
}

} // namespace maxlab
