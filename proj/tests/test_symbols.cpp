#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "maxlab/presets.hpp"
#include "maxlab/symbols.hpp"

using namespace maxlab;

namespace {
std::mt19937_64 rng(20240811);
double unif() {
    static std::uniform_real_distribution<double> d(-1.0, 1.0);
    return d(rng);
}
Eigen::Vector3d rand_vec3() { return {unif(), unif(), unif()}; }
Eigen::Matrix3d rand_mat3() {
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = unif();
    return m;
}

std::vector<double> sorted_eigs(const Eigen::MatrixXcd& p) {
    const Eigen::MatrixXcd a = p / std::complex<double>(0.0, 1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a);
    std::vector<double> eigs;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        CHECK(std::abs(solver.eigenvalues()[i].imag()) < 1e-9);
        eigs.push_back(solver.eigenvalues()[i].real());
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}
} // namespace

TEST_CASE("curl symbol entries and algebra") {
    SUBCASE("unit covector e3") {
        const Eigen::Matrix3d c = curl_symbol(Eigen::Vector3d(0, 0, 1));
        CHECK(c(0, 1) == -1.0);
        CHECK(c(1, 0) == 1.0);
        CHECK(c(0, 0) == 0.0);
        CHECK(c(0, 2) == 0.0);
        CHECK(c(1, 2) == 0.0);
        CHECK(c(2, 0) == 0.0);
        CHECK(c(2, 1) == 0.0);
        CHECK(c(2, 2) == 0.0);
    }
    SUBCASE("zero covector gives the zero matrix") {
        CHECK(curl_symbol(Eigen::Vector3d::Zero()).norm() == 0.0);
    }
    SUBCASE("C C^t = |xi|^2 I - xi xi^t (= -C^2) at random covectors") {
        for (int i = 0; i < 200; ++i) {
            const Eigen::Vector3d xi = rand_vec3();
            const Eigen::Matrix3d c = curl_symbol(xi);
            const Eigen::Matrix3d rhs = xi.squaredNorm() * Eigen::Matrix3d::Identity() - xi * xi.transpose();
            CHECK((c * c.transpose() - rhs).norm() < 1e-14);
            CHECK((c * c + rhs).norm() < 1e-14);
            CHECK((c + c.transpose()).norm() == 0.0); // antisymmetry
            CHECK((c * xi).norm() < 1e-15);           // acts as xi x (.)
        }
    }
}

TEST_CASE("adjugate identity") {
    SUBCASE("identity matrix") {
        CHECK(adjugate_identity_residual(Eigen::Matrix3d::Identity(), rand_vec3()) < 1e-15);
    }
    SUBCASE("diag(2,1,1) maps e3 to 2 e3") {
        const Eigen::Matrix3d b = Eigen::Vector3d(2, 1, 1).asDiagonal();
        const Eigen::Vector3d e3(0, 0, 1);
        CHECK((adjugate(b) * e3 - 2.0 * e3).norm() == 0.0);
        CHECK((b.transpose() * curl_symbol(e3) * b - curl_symbol(2.0 * e3)).norm() == 0.0);
        CHECK(adjugate_identity_residual(b, e3) == 0.0);
    }
    SUBCASE("random matrices, including singular ones") {
        for (int i = 0; i < 500; ++i) {
            Eigen::Matrix3d b = rand_mat3();
            if (i % 3 == 0) b.col(2) = 0.5 * b.col(0) - b.col(1); // det = 0, minors still defined
            CHECK(adjugate_identity_residual(b, rand_vec3()) < 1e-13);
            if (std::abs(b.determinant()) > 1e-3) {
                // adjugate agrees with det * inverse away from the singular set
                CHECK((adjugate(b) - b.determinant() * b.inverse()).norm() < 1e-10);
            }
        }
    }
}

TEST_CASE("maxwell symbol spectra") {
    SUBCASE("flat 3-d at (xi0, xi') = (1, e3): eigenvalues {0, 0, 1, 1, 2, 2}") {
        const CoeffSample3d flat{1, 0, 1, 1, 1, 1};
        const auto p = maxwell_symbol_3d(flat, 1.0, Eigen::Vector3d(0, 0, 1));
        const auto eigs = sorted_eigs(p);
        const std::vector<double> expect{0, 0, 1, 1, 2, 2};
        for (size_t i = 0; i < expect.size(); ++i) CHECK(eigs[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    }
    SUBCASE("2-d flat at xi0 = 0: eigenvalues {-|xi'|, 0, |xi'|}") {
        const CoeffSample2d flat{1, 1, 1};
        const Eigen::Vector2d xi(0.6, -0.8);
        const auto eigs = sorted_eigs(maxwell_symbol_2d(flat, 0.0, xi));
        CHECK(eigs[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(eigs[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(eigs[2] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("xi = 0 gives the zero matrix") {
        const CoeffSample3d flat{1, 0, 1, 1, 1, 1};
        CHECK(maxwell_symbol_3d(flat, 0.0, Eigen::Vector3d::Zero()).norm() == 0.0);
    }
}

TEST_CASE("3-d conjugation") {
    auto random_sample = [&]() {
        CoeffSample3d cs;
        cs.a11 = 1.0 + 0.3 * unif();
        cs.a21 = 0.2 * unif();
        cs.a22 = 1.0 + 0.3 * unif();
        cs.eps = 1.0 + 0.4 * std::abs(unif());
        cs.mu = 1.0 + 0.4 * std::abs(unif());
        cs.h = 1.0 / (cs.a11 * cs.a22);
        return cs;
    };

    SUBCASE("det of the raw eigenvector matrix is xi_3*^2") {
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const CoeffSample3d cs = random_sample();
            const Eigen::Vector3d xi = rand_vec3();
            Conjugation3d conj;
            try {
                conj = conjugation_3d(cs, unif(), xi, 2);
            } catch (const InvalidInput&) {
                continue;
            }
            worst = std::max(worst, std::abs(conj.m_raw.determinant() -
                                             conj.xi_star[2] * conj.xi_star[2]));
        }
        CHECK(worst < 1e-12);
    }
    SUBCASE("det m_i = xi_i*^2 on the other branches as well") {
        for (int branch : {0, 1}) {
            double worst = 0.0;
            for (int i = 0; i < 500; ++i) {
                const CoeffSample3d cs = random_sample();
                Conjugation3d conj;
                try {
                    conj = conjugation_3d(cs, unif(), rand_vec3(), branch);
                } catch (const InvalidInput&) {
                    continue;
                }
                worst = std::max(worst, std::abs(conj.m_raw.determinant() -
                                                 conj.xi_star[branch] * conj.xi_star[branch]));
            }
            CHECK(worst < 1e-12);
        }
    }
    SUBCASE("branch eigenvector norms: ||w1||^2 = 2 (xi_2*^2 + xi_3*^2)") {
        for (int i = 0; i < 200; ++i) {
            const CoeffSample3d cs = random_sample();
            Conjugation3d conj;
            try {
                conj = conjugation_3d(cs, unif(), rand_vec3(), 2);
            } catch (const InvalidInput&) {
                continue;
            }
            const auto& s = conj.xi_star;
            // pre-normalization eigenvector w1 = sqrt(2) * column
            CHECK(2.0 * conj.m_raw.col(2).squaredNorm() ==
                  doctest::Approx(2.0 * (s[1] * s[1] + s[2] * s[2])).epsilon(1e-12));
        }
    }
    SUBCASE("the +/- pairs are orthogonal before Gram-Schmidt; the mixing term vanishes at xi* = e3") {
        const CoeffSample3d flat{1, 0, 1, 1, 1, 1};
        const Conjugation3d conj = conjugation_3d(flat, 0.3, Eigen::Vector3d(0, 0, 2.0), 2);
        // <w1', w3'> = 0 when xi_1* = 0
        const auto w1 = conj.m_raw.col(2).normalized();
        const auto w3 = conj.m_raw.col(4).normalized();
        CHECK(std::abs(w1.dot(w3)) < 1e-15);
    }
    SUBCASE("orthonormality and exact factorization p = m d n on every branch") {
        double worst_resid = 0.0, worst_ortho = 0.0, worst_eig = 0.0, worst_hom = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const CoeffSample3d cs = random_sample();
            const Eigen::Vector3d xi = 3.0 * rand_vec3();
            const double xi0 = 2.0 * unif();
            for (int branch = 0; branch < 3; ++branch) {
                Conjugation3d conj;
                try {
                    conj = conjugation_3d(cs, xi0, xi, branch);
                } catch (const InvalidInput&) {
                    continue;
                }
                worst_ortho = std::max(worst_ortho,
                                       (conj.m_tilde.transpose() * conj.m_tilde -
                                        Eigen::Matrix<double, 6, 6>::Identity()).norm());
                const auto p = maxwell_symbol_3d(cs, xi0, xi);
                worst_resid = std::max(worst_resid, (p - conj.m * conj.d * conj.n).norm());

                // each orthonormal column is an eigenvector of p / (i h A eps-mu weight)
                const Eigen::Matrix<std::complex<double>, 6, 6> a = p / std::complex<double>(0, 1);
                for (int col = 0; col < 6; ++col) {
                    const Eigen::Matrix<double, 6, 1> v = conj.m_tilde.col(col);
                    // generalized eigenproblem: p/i (W v) = lambda G (W v) with the
                    // congruence W absorbed in m; check through the factorization instead
                    (void)a;
                    (void)v;
                }
                // 0-homogeneity of m and n in (xi0, xi')
                const Conjugation3d scaled = conjugation_3d(cs, 2.0 * xi0, 2.0 * xi, branch);
                worst_hom = std::max(worst_hom, (scaled.m - conj.m).norm());
                worst_hom = std::max(worst_hom, (scaled.n - conj.n).norm());
                // d is degree one
                worst_eig = std::max(worst_eig, (scaled.d - 2.0 * conj.d).norm());
            }
        }
        CHECK(worst_resid < 1e-12);
        CHECK(worst_ortho < 1e-13);
        CHECK(worst_hom < 1e-12);
        CHECK(worst_eig < 1e-12);
    }
    SUBCASE("eigen-decomposition: flat-case columns are genuine eigenvectors") {
        const CoeffSample3d flat{1, 0, 1, 1, 1, 1};
        for (int i = 0; i < 200; ++i) {
            const Eigen::Vector3d xi = 2.0 * rand_vec3();
            const double xi0 = unif();
            for (int branch = 0; branch < 3; ++branch) {
                Conjugation3d conj;
                try {
                    conj = conjugation_3d(flat, xi0, xi, branch);
                } catch (const InvalidInput&) {
                    continue;
                }
                const Eigen::Matrix<std::complex<double>, 6, 6> a =
                    maxwell_symbol_3d(flat, xi0, xi) / std::complex<double>(0, 1);
                const double n = xi.norm();
                const double expect[6] = {xi0, xi0, xi0 + n, xi0 - n, xi0 + n, xi0 - n};
                for (int col = 0; col < 6; ++col) {
                    const Eigen::Matrix<std::complex<double>, 6, 1> v =
                        conj.m_tilde.col(col).cast<std::complex<double>>();
                    CHECK((a * v - expect[col] * v).norm() < 1e-10);
                }
            }
        }
    }
    SUBCASE("branch covering: some branch passes the 1/sqrt(3) pigeonhole") {
        for (int i = 0; i < 2000; ++i) {
            const CoeffSample3d cs = random_sample();
            const Eigen::Vector3d xi = rand_vec3();
            if (xi.norm() < 1e-3) continue;
            const Eigen::Vector3d t = cs.A().transpose() * xi;
            const Eigen::Vector3d s = t / t.norm();
            CHECK(s.cwiseAbs().maxCoeff() >= 1.0 / std::sqrt(3.0) - 1e-12);
            bool some = false;
            for (int branch = 0; branch < 3; ++branch) {
                try {
                    conjugation_3d(cs, 0.1, xi, branch);
                    some = true;
                } catch (const InvalidInput&) {
                }
            }
            CHECK(some);
        }
    }
    SUBCASE("branch cutoff violations are rejected") {
        const CoeffSample3d flat{1, 0, 1, 1, 1, 1};
        CHECK_THROWS_AS(conjugation_3d(flat, 0.0, Eigen::Vector3d(1, 0, 0), 2), InvalidInput);
        CHECK_THROWS_AS(conjugation_3d(flat, 0.0, Eigen::Vector3d::Zero(), 0), InvalidInput);
    }
}

TEST_CASE("2-d conjugation") {
    SUBCASE("flat coefficients collapse the weighted norm to |xi'|") {
        const CoeffSample2d flat{1, 1, 1};
        const Conjugation2d conj = conjugation_2d(flat, 0.4, Eigen::Vector2d(0.3, -0.4));
        CHECK(conj.xi_eps_norm == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("m n = diag(e11, e22, mu) and p = m d n at random samples") {
        double worst_mn = 0.0, worst_fact = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const CoeffSample2d cs{1.0 + 0.5 * std::abs(unif()), 1.0 + 0.5 * std::abs(unif()),
                                   1.0 + 0.5 * std::abs(unif())};
            const Eigen::Vector2d xi(2.0 * unif(), 2.0 * unif());
            if (xi.norm() < 1e-3) continue;
            const double xi0 = 2.0 * unif();
            const Conjugation2d conj = conjugation_2d(cs, xi0, xi);
            Eigen::Matrix3cd diag = Eigen::Vector3cd(cs.e11, cs.e22, cs.mu).asDiagonal();
            worst_mn = std::max(worst_mn, (conj.m * conj.n - diag).norm());
            worst_fact = std::max(worst_fact,
                                  (maxwell_symbol_2d(cs, xi0, xi) - conj.m * conj.d * conj.n).norm());
        }
        CHECK(worst_mn < 1e-12);
        CHECK(worst_fact < 1e-12);
    }
    SUBCASE("charge row: first row of n against the divergence symbol") {
        for (int i = 0; i < 300; ++i) {
            const CoeffSample2d cs{1.0 + 0.5 * std::abs(unif()), 1.0 + 0.5 * std::abs(unif()),
                                   1.0 + 0.5 * std::abs(unif())};
            const Eigen::Vector2d xi(2.0 * unif(), 2.0 * unif());
            if (xi.norm() < 1e-3) continue;
            const Conjugation2d conj = conjugation_2d(cs, 0.7, xi);
            // [n u]_1 = (mu ||xi||)^{-1} (xi_1 e11 E1 + xi_2 e22 E2): the divergence
            // symbol of div(eps' E) divided by i mu ||xi||_eps
            const Eigen::Vector3cd u(unif(), unif(), unif());
            const std::complex<double> row = (conj.n * u)(0);
            const std::complex<double> div_symbol = xi[0] * cs.e11 * u(0) + xi[1] * cs.e22 * u(1);
            CHECK(std::abs(row - div_symbol / (cs.mu * conj.xi_eps_norm)) < 1e-12);
        }
    }
    SUBCASE("0-homogeneity of m, n") {
        const CoeffSample2d cs{1.3, 1.1, 1.2};
        const Eigen::Vector2d xi(0.5, 1.0);
        const Conjugation2d a = conjugation_2d(cs, 0.3, xi);
        const Conjugation2d b = conjugation_2d(cs, 0.6, 2.0 * xi);
        CHECK((a.m - b.m).norm() < 1e-14);
        CHECK((a.n - b.n).norm() < 1e-14);
        CHECK((b.d - 2.0 * a.d).norm() < 1e-14);
    }
}

TEST_CASE("phase partitions and factorization sweeps") {
    const TorusGrid g3 = TorusGrid::square(3, 24, 2.0 * EIGEN_PI);
    const CoefficientSet c3 = coefficient_preset(g3, "waveguide", 0.5);

    SUBCASE("partition lower bound on the annulus") {
        const TruncatedCoefficients tc = truncate_coefficients(c3, 32.0, TruncationScheme::B);
        std::uniform_int_distribution<Index> points(0, g3.size() - 1);
        for (int i = 0; i < 500; ++i) {
            const Index p = points(rng);
            const CoeffSample3d cs = coeff_sample_3d(tc, p);
            Eigen::Vector3d dir = rand_vec3();
            if (dir.norm() < 1e-3) continue;
            dir.normalize();
            const Eigen::Vector3d xi = 32.0 * dir; // |(0, xi)| = lambda: band weight 1
            double total = 0.0;
            for (int branch = 0; branch < 3; ++branch)
                total += phase_partition(cs, 32.0, 0.0, xi, branch);
            CHECK(total > 0.5);
        }
    }
    SUBCASE("flat coefficients: residual at roundoff") {
        const CoefficientSet flat = flat_coefficients(g3);
        const TruncatedCoefficients tc = truncate_coefficients(flat, 16.0, TruncationScheme::B);
        for (const auto& sweep : factorization_residual_3d(g3, tc, 16.0, 200, 3)) {
            CHECK(sweep.max_residual < 1e-10);
            CHECK(sweep.max_ortho_defect < 1e-12);
            CHECK(sweep.n_samples == 200);
        }
    }
    SUBCASE("variable even coefficients: pointwise algebra stays exact") {
        const TruncatedCoefficients tc = truncate_coefficients(c3, 64.0, TruncationScheme::B);
        for (const auto& sweep : factorization_residual_3d(g3, tc, 64.0, 300, 5)) {
            CHECK(sweep.max_residual < 1e-10);
            CHECK(sweep.max_ortho_defect < 1e-12);
        }
        const TorusGrid g2 = TorusGrid::square(2, 64, 2.0 * EIGEN_PI);
        const CoefficientSet c2 = coefficient_preset(g2, "waveguide", 0.5);
        const TruncatedCoefficients tc2 = truncate_coefficients(c2, 32.0, TruncationScheme::A);
        CHECK(factorization_residual_2d(g2, tc2, 32.0, 500, 7).max_residual < 1e-10);
    }
    SUBCASE("negative control: a flipped eigenvector column is detected") {
        const CoeffSample3d flat{1, 0, 1, 1, 1, 1};
        const Eigen::Vector3d xi(0.8, 0.4, 2.0);
        Conjugation3d conj = conjugation_3d(flat, 0.7, xi, 2);
        conj.m.col(3) *= -1.0; // break the factorization deliberately
        const double resid = (maxwell_symbol_3d(flat, 0.7, xi) - conj.m * conj.d * conj.n).norm();
        CHECK(resid > 0.1);
    }
    SUBCASE("empty sample set rejected") {
        const TruncatedCoefficients tc = truncate_coefficients(c3, 16.0, TruncationScheme::B);
        CHECK_THROWS_AS(factorization_residual_3d(g3, tc, 16.0, 0, 1), InvalidInput);
    }
}
