#include <doctest.h>

#include <random>

#include "maxlab/compat.hpp"
#include "maxlab/norms.hpp"
#include "maxlab/presets.hpp"
#include "maxlab/spectral.hpp"

using namespace maxlab;

namespace {

RealField sample(const TorusGrid& g, const std::function<double(const Eigen::Vector3d&)>& f) {
    RealField out(g.size());
    for (Index i = 0; i < g.size(); ++i) {
        const auto idx = g.unflat(i);
        Eigen::Vector3d x = Eigen::Vector3d::Zero();
        for (int a = 0; a < g.dim(); ++a) x[a] = g.coord(a, idx[static_cast<size_t>(a)]);
        out[i] = f(x);
    }
    return out;
}

// brute-force H^s via an O(N^2) DFT over the full lattice, independent of the FFT path
double sobolev_oracle(const TorusGrid& g, const RealField& f, double s) {
    const int d = g.dim();
    std::vector<std::array<int, 3>> modes;
    std::array<int, 3> k{0, 0, 0};
    std::function<void(int)> rec = [&](int axis) {
        if (axis == d) {
            modes.push_back(k);
            return;
        }
        for (int m = -g.n(axis) / 2; m < g.n(axis) / 2; ++m) {
            k[static_cast<size_t>(axis)] = m;
            rec(axis + 1);
        }
    };
    rec(0);
    double acc = 0.0;
    for (const auto& mode : modes) {
        std::complex<double> c = 0.0;
        double xi2 = 0.0;
        for (Index i = 0; i < g.size(); ++i) {
            const auto idx = g.unflat(i);
            double phase = 0.0;
            for (int a = 0; a < d; ++a)
                phase += 2.0 * EIGEN_PI * mode[static_cast<size_t>(a)] * idx[static_cast<size_t>(a)] / g.n(a);
            c += f[i] * std::exp(std::complex<double>(0, -phase));
        }
        c /= static_cast<double>(g.size());
        for (int a = 0; a < d; ++a) {
            const double xi = g.xi(a, mode[static_cast<size_t>(a)]);
            xi2 += xi * xi;
        }
        acc += std::pow(1.0 + xi2, s) * std::norm(c);
    }
    return std::sqrt(g.volume() * acc);
}

} // namespace

TEST_CASE("grid layout and mirror") {
    const TorusGrid g({8, 6}, {2.0, 3.0});
    CHECK(g.size() == 48);
    CHECK(g.spacing(0) == doctest::Approx(0.25));
    CHECK(g.flat({3, 5, 0}) == 3 * 6 + 5);
    const auto idx = g.unflat(23);
    CHECK(idx[0] == 3);
    CHECK(idx[1] == 5);
    CHECK(g.mirror(1, 0) == 0);
    CHECK(g.mirror(1, 2) == 4);
    CHECK_THROWS_AS(TorusGrid({8, 7}, {1.0, 1.0}), InvalidInput); // odd normal axis
}

TEST_CASE("fft round trip and spectral derivative") {
    const TorusGrid g = TorusGrid::square(2, 32, 2.0 * EIGEN_PI);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    RealField f(g.size());
    for (Index i = 0; i < g.size(); ++i) f[i] = gauss(rng);
    const Fft& fft = fft_for(g);
    CHECK((fft.inverse(fft.forward(f)) - f).abs().maxCoeff() < 1e-12);

    const RealField s = sample(g, [](const Eigen::Vector3d& x) { return std::sin(3.0 * x[0]); });
    const RealField ds = derivative(g, s, 0);
    const RealField expect = sample(g, [](const Eigen::Vector3d& x) { return 3.0 * std::cos(3.0 * x[0]); });
    CHECK((ds - expect).abs().maxCoeff() < 1e-10);
}

TEST_CASE("sobolev norm: zero, single mode, brute-force oracle") {
    const TorusGrid g = TorusGrid::square(2, 16, 2.0 * EIGEN_PI);
    CHECK(sobolev_norm(g, RealField::Zero(g.size()), 1.7) == 0.0);

    // cos(2 pi x / L) at s = 0 has norm sqrt(volume / 2)
    const RealField c = sample(g, [&](const Eigen::Vector3d& x) { return std::cos(2.0 * EIGEN_PI * x[0] / g.length(0)); });
    CHECK(sobolev_norm(g, c, 0.0) == doctest::Approx(std::sqrt(g.volume() / 2.0)).epsilon(1e-12));

    const RealField f = random_band_field(g, 1.0, 5.0, 77, Parity::Even);
    const double direct = sobolev_oracle(g, f, 1.0);
    CHECK(sobolev_norm(g, f, 1.0) == doctest::Approx(direct).epsilon(1e-10));

    SUBCASE("rejects non-finite samples") {
        RealField bad = f;
        bad[3] = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(sobolev_norm(g, bad, 0.0), InvalidInput);
    }
}

TEST_CASE("parseval and monotonicity properties") {
    const TorusGrid g = TorusGrid::square(3, 12, 5.0);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const RealField f = random_band_field(g, 0.0, 4.0, seed, Parity::Even);
        const double l2 = std::sqrt(f.square().sum() * g.cell_volume());
        CHECK(sobolev_norm(g, f, 0.0) == doctest::Approx(l2).epsilon(1e-10));
        double prev = 0.0;
        for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
            const double v = sobolev_norm(g, f, s);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("lq norms") {
    const TorusGrid g = TorusGrid::square(2, 64, 2.0 * EIGEN_PI);
    const RealField c = RealField::Constant(g.size(), 0.7);
    for (double q : {1.0, 2.0, 3.0, 7.0})
        CHECK(lq_norm(g, c, q) == doctest::Approx(0.7 * std::pow(g.volume(), 1.0 / q)).epsilon(1e-12));
    CHECK(lq_norm(g, c, std::numeric_limits<double>::infinity()) == doctest::Approx(0.7));

    // smooth bump mass against a refined-grid quadrature oracle
    auto bump = [&](const Eigen::Vector3d& x) {
        const double two_pi = 2.0 * EIGEN_PI;
        double r2 = 0.0;
        for (int a = 0; a < 2; ++a) {
            double d = std::fmod(std::abs(x[a] - 3.0), two_pi);
            d = std::min(d, two_pi - d);
            r2 += d * d;
        }
        return std::exp(-3.125 * r2);
    };
    const double mass_coarse = lq_norm(g, sample(g, bump), 1.0);
    const TorusGrid fine = TorusGrid::square(2, 192, 2.0 * EIGEN_PI);
    const double mass_fine = lq_norm(fine, sample(fine, bump), 1.0);
    CHECK(mass_coarse == doctest::Approx(mass_fine).epsilon(1e-10));

    const RealField f = random_band_field(g, 1.0, 9.0, 31, Parity::Odd);
    CHECK(lq_norm(g, f, 2.0) == doctest::Approx(sobolev_norm(g, f, 0.0)).epsilon(1e-10));
}

TEST_CASE("mixed space-time norms") {
    const TorusGrid g = TorusGrid::square(2, 32, 2.0 * EIGEN_PI);
    FieldState s = initial_state(g, {"standing-wave", 1.0, 2.0, 1});

    SUBCASE("constant-in-time field, p = 2 over unit horizon") {
        NormReport rep;
        for (int i = 0; i <= 10; ++i) {
            FieldState snap = s;
            snap.time = i / 10.0;
            rep.mixed_norm_accumulate(snap, 2.0, 3.0);
        }
        CHECK(rep.mixed_norm(2.0, 3.0) == doctest::Approx(lq_norm(s, 3.0)).epsilon(1e-12));
    }
    SUBCASE("p = infinity is the running max") {
        NormReport rep;
        const double inf = std::numeric_limits<double>::infinity();
        int i = 0;
        for (double scale : {1.0, 3.0, 2.0}) {
            FieldState snap = s;
            snap.time = i++;
            for (auto& c2 : snap.comps) c2 *= scale / lq_norm(s, 2.0);
            rep.mixed_norm_accumulate(snap, inf, 2.0);
        }
        CHECK(rep.mixed_norm(inf, 2.0) == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("single-mode traveling wave at (4,4) against closed-form quadrature") {
        // u(t, x) = cos(k x1 - w t): int |u|^4 dx = 3 V / 8 at every t
        const double k = 2.0, w = 2.0, T = 1.0;
        NormReport rep;
        const int nt = 64;
        for (int i = 0; i <= nt; ++i) {
            const double t = T * i / nt;
            FieldState snap = FieldState::zero(g);
            snap.time = t;
            snap.comps[1] = sample(g, [&](const Eigen::Vector3d& x) { return std::cos(k * x[0] - w * t); });
            rep.mixed_norm_accumulate(snap, 4.0, 4.0);
        }
        const double expect = std::pow(T * 3.0 * g.volume() / 8.0, 0.25);
        CHECK(rep.mixed_norm(4.0, 4.0) == doctest::Approx(expect).epsilon(1e-10));
    }
    SUBCASE("grid mismatch rejected") {
        NormReport rep;
        rep.mixed_norm_accumulate(s, 2.0, 2.0);
        FieldState other = FieldState::zero(TorusGrid::square(2, 16, 2.0 * EIGEN_PI));
        other.time = 1.0;
        CHECK_THROWS_AS(rep.mixed_norm_accumulate(other, 2.0, 2.0), InvalidInput);
    }
}

TEST_CASE("reflection extension") {
    const TorusGrid g = TorusGrid::square(2, 32, 2.0 * EIGEN_PI);

    SUBCASE("odd extension demands vanishing traces") {
        const HalfField h = HalfField::sample(g, [](const Eigen::Vector3d& x) { return x[1]; });
        CHECK_THROWS_AS(extend_half_to_torus(h, Parity::Odd), InvalidInput); // trace at x2 = L/2 is L/2
        const HalfField ok = HalfField::sample(g, [&](const Eigen::Vector3d& x) {
            return std::sin(2.0 * EIGEN_PI * x[1] / g.length(1));
        });
        const RealField f = extend_half_to_torus(ok, Parity::Odd);
        CHECK(parity_defect(g, f, Parity::Odd) == 0.0);
        CHECK(boundary_plane_l2(g, f) == 0.0); // exact zeros on the wall
    }
    SUBCASE("kink |x_d| from even extension of x_d, Fourier series oracle") {
        const HalfField h = HalfField::sample(g, [](const Eigen::Vector3d& x) { return x[1]; });
        const RealField f = extend_half_to_torus(h, Parity::Even);
        // the extension is the periodized |x| = min(x, L - x) exactly on grid points
        const double L = g.length(1);
        const RealField expect = sample(g, [&](const Eigen::Vector3d& x) { return std::min(x[1], L - x[1]); });
        CHECK((f - expect).abs().maxCoeff() < 1e-15); // one ulp of mirrored-coordinate arithmetic
        CHECK(parity_defect(g, f, Parity::Even) == 0.0);
        // analytic series coefficient: c_k = -2L / (pi k)^2 for odd k (aliasing is O(1/n^2))
        const Fft& fft = fft_for(g);
        const Spectrum s = fft.forward(f);
        const double c1 = s[1].real() / g.size(); // r2c layout: (k0, k1) = (0, 1)
        CHECK(c1 == doctest::Approx(-L / (EIGEN_PI * EIGEN_PI)).epsilon(3e-3)); // aliasing is O(1/n^2)
    }
    SUBCASE("smooth even profile extends to a single Fourier mode") {
        const HalfField h =
            HalfField::sample(g, [&](const Eigen::Vector3d& x) { return std::cos(2.0 * EIGEN_PI * x[1] / g.length(1)); });
        const RealField f = extend_half_to_torus(h, Parity::Even);
        const Fft& fft = fft_for(g);
        const Spectrum s = fft.forward(f);
        const SpectralLayout& layout = fft.layout();
        for (Index i = 0; i < layout.size; ++i) {
            const auto k = layout.wavenumbers(i);
            const double expected = (k[0] == 0 && std::abs(k[1]) == 1) ? 0.5 * g.size() : 0.0;
            CHECK(std::abs(s[i] - expected) < 1e-9 * g.size());
        }
    }
    SUBCASE("round trip is exact for both parities") {
        const int nrm = g.normal_axis();
        for (Parity p : {Parity::Even, Parity::Odd}) {
            HalfField h = HalfField::sample(g, [&](const Eigen::Vector3d& x) {
                // exact zeros at both fixed planes for the odd branch
                if (p == Parity::Odd && (x[1] == 0.0 || x[1] == g.length(1) / 2.0)) return 0.0;
                const double v = std::sin(2.0 * x[1]) * std::cos(3.0 * x[0]);
                return p == Parity::Even ? std::cos(2.0 * x[1]) : v;
            });
            (void)nrm;
            const RealField f = extend_half_to_torus(h, p);
            const HalfField back = restrict_to_half(g, f);
            CHECK((back.values - h.values).abs().maxCoeff() == 0.0);
        }
    }
    SUBCASE("extend_state names violating components") {
        const TorusGrid g3 = TorusGrid::square(3, 8, 2.0);
        std::vector<HalfField> comps;
        for (int c = 0; c < 6; ++c)
            comps.push_back(HalfField::sample(g3, [c](const Eigen::Vector3d&) { return c == 0 ? 1.0 : 0.0; }));
        try {
            extend_state(g3, comps, standard_parity_plan(3));
            CHECK(false);
        } catch (const InvalidInput& err) {
            CHECK(std::string(err.what()).find("E1") != std::string::npos);
        }
    }
    SUBCASE("zero state extends to zero") {
        std::vector<HalfField> comps;
        for (int c = 0; c < 3; ++c)
            comps.push_back(HalfField::sample(g, [](const Eigen::Vector3d&) { return 0.0; }));
        const FieldState s = extend_state(g, comps, standard_parity_plan(2));
        for (const auto& comp : s.comps) CHECK(comp.abs().maxCoeff() == 0.0);
    }
}

TEST_CASE("parity closure under products with even coefficients") {
    const TorusGrid g = TorusGrid::square(2, 24, 2.0 * EIGEN_PI);
    const RealField odd = random_band_field(g, 0.0, 5.0, 3, Parity::Odd);
    const RealField even = random_band_field(g, 0.0, 5.0, 4, Parity::Even);
    CHECK(parity_defect(g, RealField(odd * even), Parity::Odd) < 1e-12);
    CHECK(parity_defect(g, RealField(even * even), Parity::Even) < 1e-12);
    CHECK(parity_defect(g, RealField(0.3 * odd + 0.4 * mirror_normal(g, RealField(-odd))), Parity::Odd) < 1e-12);
}

TEST_CASE("geodesic coefficients") {
    const TorusGrid g = TorusGrid::square(3, 16, 2.0 * EIGEN_PI);

    SUBCASE("flat metric") {
        const CoefficientSet c = flat_coefficients(g);
        CHECK(c.sqrt_g.maxCoeff() == doctest::Approx(1.0));
        CHECK(c.a11.maxCoeff() == doctest::Approx(1.0));
        CHECK(c.a21.abs().maxCoeff() == 0.0);
    }
    SUBCASE("A A^t reproduces the cometric block") {
        auto g11f = [&](const Eigen::Vector3d& x) {
            const double s = std::sin(EIGEN_PI * x[2] / g.length(2));
            return 1.0 + 0.5 * s * s;
        };
        const HalfField g11 = HalfField::sample(g, g11f);
        const HalfField g12 = HalfField::sample(g, [&](const Eigen::Vector3d& x) {
            const double s = std::sin(EIGEN_PI * x[2] / g.length(2));
            return 0.1 * s * s * std::cos(x[0]);
        });
        const HalfField g22 = HalfField::sample(g, [](const Eigen::Vector3d&) { return 1.3; });
        const HalfField one = HalfField::sample(g, [](const Eigen::Vector3d&) { return 1.0; });
        const CoefficientSet c = geodesic_coefficients(g, one, one, {g11, g12, g22});
        for (Index i = 0; i < g.size(); ++i) {
            CHECK(c.a11[i] * c.a11[i] == doctest::Approx(c.g11[i]).epsilon(1e-12));
            CHECK(c.a11[i] * c.a21[i] == doctest::Approx(c.g12[i]).epsilon(1e-12));
            CHECK(c.a21[i] * c.a21[i] + c.a22[i] * c.a22[i] == doctest::Approx(c.g22[i]).epsilon(1e-12));
            // det consistency: sqrt_g * det(A) = 1
            CHECK(c.sqrt_g[i] * (c.a11[i] * c.a22[i]) == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(parity_defect(g, c.g11, Parity::Even) < 1e-12);
    }
    SUBCASE("non-elliptic block rejected") {
        const HalfField bad = HalfField::sample(g, [](const Eigen::Vector3d&) { return -1.0; });
        const HalfField one = HalfField::sample(g, [](const Eigen::Vector3d&) { return 1.0; });
        CHECK_THROWS_AS(geodesic_coefficients(g, one, one, {bad, one, one}), InvalidInput);
    }
}

TEST_CASE("compatibility residuals") {
    SUBCASE("parity-built state satisfies orders 0 and 1") {
        const TorusGrid g = TorusGrid::square(3, 16, 2.0 * EIGEN_PI);
        const CoefficientSet coeffs = coefficient_preset(g, "waveguide", 0.4);
        const FieldState s = random_state(g, 1.0, 4.0, 11);
        for (const CompatRow& r : compatibility_residuals(s, coeffs, 1))
            CHECK(r.residual < 1e-10);
    }
    SUBCASE("constant E1 has order-0 residual = area^{1/2}") {
        const TorusGrid g = TorusGrid::square(3, 16, 2.0);
        const CoefficientSet coeffs = flat_coefficients(g);
        FieldState s = FieldState::zero(g);
        s.comps[0] = RealField::Ones(g.size());
        const auto rows = compatibility_residuals(s, coeffs, 0);
        CHECK(rows[0].residual == doctest::Approx(std::sqrt(g.length(0) * g.length(1))).epsilon(1e-12));
    }
    SUBCASE("order-2 trace against a one-sided finite-difference oracle") {
        // tall anisotropic grid pushes the one-sided stencil error below 1e-6
        const TorusGrid g({8, 8, 256}, {2.0 * EIGEN_PI, 2.0 * EIGEN_PI, 2.0 * EIGEN_PI});
        const CoefficientSet coeffs = flat_coefficients(g);
        const FieldState s = random_state(g, 0.0, 2.5, 23);
        const auto rows = compatibility_residuals(s, coeffs, 2);
        REQUIRE(rows.size() == 7);
        // oracle for the (g11 w1 + g12 w2) condition, flat metric: [d3 (d2 E3 - d3 E2)]
        const RealField inner = derivative(g, s.E(2), 1) - derivative(g, s.E(1), 2);
        const double h = g.spacing(2);
        double acc = 0.0;
        for (int i0 = 0; i0 < g.n(0); ++i0) {
            for (int i1 = 0; i1 < g.n(1); ++i1) {
                auto v = [&](int i2) { return inner[g.flat({i0, i1, (i2 + g.n(2)) % g.n(2)})]; };
                // 6th-order one-sided first derivative at the wall
                const double d = (-49.0 / 20.0 * v(0) + 6.0 * v(1) - 15.0 / 2.0 * v(2) + 20.0 / 3.0 * v(3) -
                                  15.0 / 4.0 * v(4) + 6.0 / 5.0 * v(5) - 1.0 / 6.0 * v(6)) /
                                 h;
                acc += d * d;
            }
        }
        const double oracle = std::sqrt(acc * g.spacing(0) * g.spacing(1));
        const CompatRow& row = rows[6];
        CHECK(row.id.find("g11 w1") != std::string::npos);
        CHECK(row.residual == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(row.supported);
    }
}
