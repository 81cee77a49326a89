#include <doctest.h>

#include <random>

#include "maxlab/envelope.hpp"
#include "maxlab/norms.hpp"
#include "maxlab/presets.hpp"
#include "maxlab/spectral.hpp"
#include "maxlab/symbols.hpp"

using namespace maxlab;

TEST_CASE("dyadic bank: partition of unity and band structure") {
    const TorusGrid g = TorusGrid::square(2, 64, 2.0 * EIGEN_PI);
    const DyadicBank bank(g);

    SUBCASE("reconstruction on random fields") {
        for (std::uint64_t seed : {1u, 9u}) {
            const RealField f = random_band_field(g, 0.0, 30.0, seed, Parity::Even);
            RealField sum = RealField::Zero(g.size());
            for (int b = 0; b < bank.n_bands(); ++b) sum += bank.apply(f, b);
            CHECK((sum - f).abs().maxCoeff() / f.abs().maxCoeff() < 1e-10);
        }
    }
    SUBCASE("single mode at the annulus center passes with weight 1") {
        const int band = bank.band_of(8.0) >= 0 ? bank.band_of(8.0) : 0;
        RealField f(g.size());
        for (Index i = 0; i < g.size(); ++i) f[i] = std::cos(8.0 * g.coord(0, g.unflat(i)[0]));
        const RealField out = bank.apply(f, band);
        CHECK((out - f).abs().maxCoeff() < 1e-12);
        CHECK(bank.weight(band, 8.0) == doctest::Approx(1.0));
    }
    SUBCASE("almost orthogonality within factor [1, 3]") {
        const RealField f = random_band_field(g, 0.0, 30.0, 3, Parity::Odd);
        const double total = std::pow(sobolev_norm(g, f, 0.0), 2);
        double banded = 0.0;
        for (int b = 0; b < bank.n_bands(); ++b) banded += std::pow(sobolev_norm(g, bank.apply(f, b), 0.0), 2);
        CHECK(banded >= total / 3.0);
        CHECK(banded <= 3.0 * total);
    }
    SUBCASE("projections commute with parity") {
        for (Parity p : {Parity::Even, Parity::Odd}) {
            const RealField f = random_band_field(g, 0.0, 20.0, 5, p);
            for (int b = 2; b < 6; ++b) CHECK(parity_defect(g, bank.apply(f, b), p) < 1e-12);
        }
    }
    SUBCASE("enlarged projector is the identity on the band") {
        const RealField f = random_band_field(g, 0.0, 30.0, 8, Parity::Even);
        for (int b = 1; b + 1 < bank.n_bands(); ++b) {
            const RealField once = bank.apply(f, b);
            const RealField twice = bank.apply_enlarged(once, b);
            CHECK((twice - once).abs().maxCoeff() < 1e-11 * std::max(1.0, once.abs().maxCoeff()));
        }
    }
    SUBCASE("lambda above Nyquist rejected") { CHECK_THROWS_AS(bank.band_of(1024.0), InvalidInput); }
}

TEST_CASE("coefficient truncation") {
    const TorusGrid g = TorusGrid::square(2, 128, 2.0 * EIGEN_PI);

    SUBCASE("constant coefficients are fixed points of both schemes") {
        const CoefficientSet c = flat_coefficients(g);
        for (auto scheme : {TruncationScheme::A, TruncationScheme::B}) {
            const TruncatedCoefficients tc = truncate_coefficients(c, 32.0, scheme);
            CHECK((tc.e11 - 1.0).abs().maxCoeff() < 1e-12);
            CHECK((tc.m33 - 1.0).abs().maxCoeff() < 1e-12);
            CHECK(tc.e12.abs().maxCoeff() < 1e-12);
        }
    }
    SUBCASE("Lipschitz kink: sup distance decays like 1/lambda") {
        const CoefficientSet c = coefficient_preset(g, "kink", 1.0);
        std::vector<double> scaled;
        for (double lambda : {16.0, 32.0, 64.0, 128.0, 256.0}) {
            const TruncatedCoefficients tc = truncate_coefficients(c, lambda, TruncationScheme::A);
            const double dist = (tc.e11 - c.sqrt_g * c.g11 * c.eps).abs().maxCoeff();
            scaled.push_back(lambda * dist);
        }
        for (size_t i = 1; i < scaled.size(); ++i) {
            CHECK(scaled[i] < 3.0 * scaled[0]);
            CHECK(scaled[i] > scaled[0] / 3.0);
        }
    }
    SUBCASE("scheme B factors are band limited below lambda/8") {
        const CoefficientSet c = coefficient_preset(g, "waveguide", 0.6);
        const double lambda = 64.0;
        const TruncatedCoefficients tc = truncate_coefficients(c, lambda, TruncationScheme::B);
        const Fft& fft = fft_for(g);
        const Spectrum s = fft.forward(tc.a11);
        const SpectralLayout& layout = fft.layout();
        const double scale = tc.a11.abs().maxCoeff() * g.size();
        for (Index i = 0; i < layout.size; ++i) {
            const auto k = layout.wavenumbers(i);
            const double r = std::hypot(g.xi(0, k[0]), g.xi(1, k[1]));
            if (r > lambda / 8.0 + 1e-9) CHECK(std::abs(s[i]) < 1e-12 * scale);
        }
    }
    SUBCASE("telescoping bound: high-frequency remainder is size 1/lambda against derivatives") {
        // || S_lambda div(h_{>lambda} A A^t eps E) || <= lambda ||h_{>lambda}||_inf (bounded) ||E||
        const CoefficientSet c = coefficient_preset(g, "kink", 1.0);
        const DyadicBank bank(g);
        const RealField e = random_band_field(g, 0.0, 40.0, 17, Parity::Even);
        const RealField h_full = c.sqrt_g;
        double prev_ratio = 0.0;
        for (double lambda : {16.0, 32.0, 64.0}) {
            const RealField h_hi = h_full - lowpass(g, h_full, lambda / 16.0);
            const RealField prod1 = h_hi * c.g11 * c.eps * e;
            const RealField prod2 = h_hi * c.g22 * c.eps * e;
            std::vector<const RealField*> comps{&prod1, &prod2};
            const RealField div = divergence(g, comps);
            const int band = bank.band_of(lambda);
            const double lhs = sobolev_norm(g, bank.apply(div, band), 0.0);
            const double bound = lambda * h_hi.abs().maxCoeff() * (c.g11 * c.eps).abs().maxCoeff() *
                                 sobolev_norm(g, e, 0.0) * 2.0;
            CHECK(lhs <= bound);
            const double ratio = lhs / bound;
            if (prev_ratio > 0.0) CHECK(ratio < 10.0 * prev_ratio + 1.0);
            prev_ratio = ratio;
        }
    }
}

TEST_CASE("commutator decay") {
    const TorusGrid g({4, 1024}, {2.0 * EIGEN_PI, 2.0 * EIGEN_PI});
    const DyadicBank bank(g);

    SUBCASE("constant coefficient commutes exactly") {
        const RealField c = RealField::Constant(g.size(), 2.5);
        CHECK(commutator_decay(g, c, bank, bank.band_of(16.0)) < 1e-13);
    }
    SUBCASE("kink family: lambda * norm bounded across bands") {
        const CoefficientSet c = coefficient_preset(g, "kink", 1.0);
        const RealField kappa = c.eps;
        double worst = 0.0;
        for (double lambda : {8.0, 16.0, 32.0, 64.0, 128.0, 256.0}) {
            const double est = commutator_decay(g, kappa, bank, bank.band_of(lambda));
            worst = std::max(worst, lambda * est);
        }
        CHECK(worst < 10.0);
        CHECK(worst > 0.0);
    }
    SUBCASE("single low mode against two-mode interaction arithmetic") {
        // kappa = cos(x2), f = cos(k x2): the commutator shifts modes by one
        const double lambda = 32.0;
        const int band = bank.band_of(lambda);
        const int k = 31; // weights differ across k-1, k, k+1
        RealField kappa(g.size()), f(g.size());
        for (Index i = 0; i < g.size(); ++i) {
            const double x2 = g.coord(1, g.unflat(i)[1]);
            kappa[i] = std::cos(x2);
            f[i] = std::cos(k * x2);
        }
        const RealField trunc = lowpass(g, kappa, lambda / 16.0); // identity here
        CHECK((trunc - kappa).abs().maxCoeff() < 1e-12);
        const RealField got =
            RealField(kappa * bank.apply(f, band)) - bank.apply(RealField(kappa * f), band);
        const double wk = bank.weight(band, k);
        const double wkm = bank.weight(band, k - 1.0);
        const double wkp = bank.weight(band, k + 1.0);
        RealField expect(g.size());
        for (Index i = 0; i < g.size(); ++i) {
            const double x2 = g.coord(1, g.unflat(i)[1]);
            expect[i] = 0.5 * (wk - wkm) * std::cos((k - 1) * x2) + 0.5 * (wk - wkp) * std::cos((k + 1) * x2);
        }
        CHECK((got - expect).abs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("besov norms") {
    const TorusGrid g = TorusGrid::square(2, 64, 2.0 * EIGEN_PI);
    SUBCASE("constant lives in the low band only") {
        CHECK(besov_norm(g, RealField::Constant(g.size(), -1.7), 1.0) == doctest::Approx(1.7).epsilon(1e-12));
    }
    SUBCASE("single band scales like N^rho * amplitude") {
        RealField f(g.size());
        for (Index i = 0; i < g.size(); ++i) f[i] = 0.3 * std::cos(8.0 * g.coord(0, g.unflat(i)[0]));
        const double rho = 1.5;
        CHECK(besov_norm(g, f, rho) == doctest::Approx(std::pow(8.0, rho) * 0.3).epsilon(1e-10));
    }
    SUBCASE("kink norm is stable under refinement") {
        auto value = [&](int n) {
            const TorusGrid gg = TorusGrid::square(2, n, 2.0 * EIGEN_PI);
            return besov_norm(gg, coefficient_preset(gg, "kink", 1.0).eps, 1.0);
        };
        const double coarse = value(64);
        const double fine = value(128);
        CHECK(std::abs(coarse - fine) / fine < 0.05);
    }
}

TEST_CASE("mollifier") {
    const TorusGrid g = TorusGrid::square(2, 64, 2.0 * EIGEN_PI);
    const FieldState state = initial_state(g, {"wave-packet", 1.0, 6.0, 21});

    SUBCASE("L2 distance decreases monotonically along the ladder") {
        double prev = std::numeric_limits<double>::infinity();
        for (double n : {4.0, 8.0, 16.0, 32.0, 64.0, 128.0}) {
            const FieldState m = mollify_preserving_bc(state, n);
            double dist = 0.0;
            for (int c = 0; c < state.n_comps(); ++c) {
                const double d =
                    sobolev_norm(g, RealField(m.comps[static_cast<size_t>(c)] - state.comps[static_cast<size_t>(c)]), 0.0);
                dist += d * d;
            }
            dist = std::sqrt(dist);
            CHECK(dist < prev);
            prev = dist;
        }
    }
    SUBCASE("odd components stay odd with vanishing trace") {
        FieldState odd_state = initial_state(g, {"wave-packet", 1.0, 5.0, 77});
        odd_state.comps[0] = symmetrize(g, RealField(odd_state.comps[1] * odd_state.comps[1]), Parity::Odd);
        odd_state.comps[0] += odd_state.comps[1]; // wall-separated, genuinely odd part below
        odd_state.comps[0] = symmetrize(g, odd_state.comps[0], Parity::Odd);
        const FieldState m = mollify_preserving_bc(odd_state, 16.0);
        CHECK(parity_defect(g, m.comps[0], Parity::Odd) < 1e-12);
        CHECK(boundary_plane_l2(g, m.comps[0]) <= 1e-12 * m.comps[0].abs().maxCoeff());
    }
    SUBCASE("constants are unchanged") {
        const RealField c = RealField::Constant(g.size(), 3.3);
        CHECK((mollify(g, c, 8.0) - c).abs().maxCoeff() < 1e-12);
    }
    SUBCASE("support margin violation rejected") {
        FieldState bad = FieldState::zero(g);
        bad.comps[0] = random_band_field(g, 1.0, 6.0, 6, Parity::Odd); // no wall margin
        CHECK_THROWS_AS(mollify_preserving_bc(bad, 16.0), InvalidInput);
    }
}

TEST_CASE("frequency envelopes") {
    const TorusGrid g = TorusGrid::square(2, 128, 2.0 * EIGEN_PI);
    const double s = 1.5, delta = 0.3;

    SUBCASE("single band collapses to the two-sided ramp") {
        RealField f(g.size());
        for (Index i = 0; i < g.size(); ++i) f[i] = std::cos(16.0 * g.coord(0, g.unflat(i)[0]));
        FrequencyEnvelope env = sharp_envelope(g, f, s, delta);
        // normalize so the peak band has c~ = 1
        double peak = 0.0;
        size_t peak_idx = 0;
        for (size_t i = 0; i < env.c_tilde.size(); ++i)
            if (env.c_tilde[i] > peak) {
                peak = env.c_tilde[i];
                peak_idx = i;
            }
        CHECK(env.N[peak_idx] == 16.0);
        for (size_t i = 0; i < env.N.size(); ++i) {
            const double expect = std::pow(std::min(env.N[i] / 16.0, 16.0 / env.N[i]), delta) * peak;
            CHECK(env.c[i] >= expect * (1.0 - 1e-9));
        }
    }
    SUBCASE("zero field gives the zero envelope") {
        const FrequencyEnvelope env = sharp_envelope(g, RealField::Zero(g.size()), s, delta);
        for (double c : env.c) CHECK(c == 0.0);
    }
    SUBCASE("axioms hold exhaustively on random fields") {
        for (std::uint64_t seed : {11u, 12u, 13u}) {
            const RealField u = random_band_field(g, 0.0, 50.0, seed, Parity::Even);
            const FrequencyEnvelope env = sharp_envelope(g, u, s, delta);
            const EnvelopeCheck chk = verify_envelope(env, sobolev_norm(g, u, s));
            CHECK(chk.energy_margin <= 1e-12);
            CHECK(chk.slow_margin <= 1.0 + 1e-12);
            CHECK(chk.l2_ratio <= 3.0 * chk.c_delta); // band overlap contributes at most the factor 3
        }
    }
    SUBCASE("envelopes converge in l2 along an H^s-convergent ladder") {
        const RealField u = random_band_field(g, 0.0, 20.0, 31, Parity::Even);
        const FrequencyEnvelope ref = sharp_envelope(g, u, s, delta);
        double prev = std::numeric_limits<double>::infinity();
        for (double n : {20.0, 40.0, 80.0, 160.0}) {
            const RealField un = mollify(g, u, n);
            const FrequencyEnvelope env = sharp_envelope(g, un, s, delta);
            double dist = 0.0;
            for (size_t i = 0; i < env.c.size(); ++i) dist += std::pow(env.c[i] - ref.c[i], 2);
            dist = std::sqrt(dist);
            CHECK(dist <= prev * (1.0 + 1e-9));
            prev = dist;
        }
        CHECK(prev < 0.2 * sobolev_norm(g, u, s));
    }
}

TEST_CASE("temporal and space-time projections") {
    SUBCASE("temporal bank reconstructs a series") {
        const int nt = 64;
        const double t_span = 2.0;
        Eigen::ArrayXd series(nt);
        std::mt19937_64 rng(3);
        std::normal_distribution<double> gauss;
        for (int i = 0; i < nt; ++i) series[i] = gauss(rng);
        Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(nt);
        double max_tau = EIGEN_PI * nt / t_span;
        double top = 1.0;
        while (top < max_tau) top *= 2.0;
        for (double lambda = 1.0; lambda <= top; lambda *= 2.0)
            sum += project_temporal(series, t_span, lambda);
        CHECK((sum - series).abs().maxCoeff() < 1e-10);
    }
    SUBCASE("space-time projection of a plane wave lands in its joint band") {
        const TorusGrid g = TorusGrid::square(2, 32, 2.0 * EIGEN_PI);
        const int nt = 32;
        const double t_span = 2.0 * EIGEN_PI;
        std::vector<RealField> slices;
        for (int it = 0; it < nt; ++it) {
            RealField slice(g.size());
            for (Index i = 0; i < g.size(); ++i) {
                const double x = g.coord(0, g.unflat(i)[0]);
                slice[i] = std::cos(4.0 * x - 4.0 * (t_span * it / nt));
            }
            slices.push_back(slice);
        }
        // |(tau, xi)| = sqrt(32): shared between the lambda = 4 and 8 bands; the
        // joint bank reconstructs the wave and far bands annihilate it
        std::vector<RealField> sum(slices.size(), RealField::Zero(g.size()));
        for (double lambda = 1.0; lambda <= 64.0; lambda *= 2.0) {
            const auto part = project_spacetime(g, slices, t_span, lambda);
            for (size_t it = 0; it < sum.size(); ++it) sum[it] += part[it];
        }
        for (size_t it = 0; it < sum.size(); ++it)
            CHECK((sum[it] - slices[it]).abs().maxCoeff() < 1e-10);
        const auto dropped = project_spacetime(g, slices, t_span, 64.0);
        for (int it = 0; it < nt; ++it) CHECK(dropped[static_cast<size_t>(it)].abs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("dense quantization") {
    const TorusGrid g = TorusGrid::square(2, 16, 2.0 * EIGEN_PI);
    const RealField f = random_band_field(g, 0.0, 6.0, 2, Parity::Even);

    SUBCASE("identity symbol") {
        const RealField out = quantize(g, [](Index, const Eigen::Vector3d&) { return 1.0; }, f);
        CHECK((out - f).abs().maxCoeff() < 1e-12);
    }
    SUBCASE("pure multiplier agrees with the Fourier path") {
        auto mult = [](const Eigen::Vector3d& xi) { return 1.0 / (1.0 + xi.squaredNorm()); };
        const RealField via_symbol = quantize(g, [&](Index, const Eigen::Vector3d& xi) { return mult(xi); }, f);
        const RealField via_fft = apply_multiplier(g, f, mult);
        CHECK((via_symbol - via_fft).abs().maxCoeff() < 1e-12);
    }
    SUBCASE("x-dependent zero-order symbol is pointwise multiplication") {
        const RealField kappa = random_band_field(g, 0.0, 3.0, 8, Parity::Even);
        const RealField out = quantize(g, [&](Index p, const Eigen::Vector3d&) { return kappa[p]; }, f);
        CHECK((out - kappa * f).abs().maxCoeff() < 1e-11);
    }
    SUBCASE("cost guard rejects large grids") {
        const TorusGrid big = TorusGrid::square(2, 128, 2.0 * EIGEN_PI);
        CHECK_THROWS_AS(quantize(big, [](Index, const Eigen::Vector3d&) { return 1.0; },
                                 RealField::Zero(big.size())),
                        InvalidInput);
    }
}
