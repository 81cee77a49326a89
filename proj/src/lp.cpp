#include "maxlab/lp.hpp"

#include <cmath>
#include <random>

#include <fftw3.h>

#include "maxlab/spectral.hpp"

namespace maxlab {

namespace {
double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
} // namespace

double smooth_step_down(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = bump(2.0 - r);
    const double b = bump(r - 1.0);
    return a / (a + b);
}

DyadicBank::DyadicBank(const TorusGrid& grid) : grid_(grid) {
    double max_xi = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        const double ny = grid.nyquist(a);
        max_xi += ny * ny;
    }
    max_xi = std::sqrt(max_xi);
    double top = 1.0;
    while (top < max_xi) top *= 2.0;
    for (double l = 1.0; l <= top; l *= 2.0) lambdas_.push_back(l);

    const SpectralLayout layout(grid);
    cached_.assign(lambdas_.size(), RealField(layout.size));
    cached_enlarged_.assign(lambdas_.size(), RealField(layout.size));
    for (Index idx = 0; idx < layout.size; ++idx) {
        const auto k = layout.wavenumbers(idx);
        double r2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            const double xi = grid.xi(a, k[static_cast<size_t>(a)]);
            r2 += xi * xi;
        }
        const double r = std::sqrt(r2);
        for (int b = 0; b < n_bands(); ++b) {
            cached_[static_cast<size_t>(b)][idx] = weight(b, r);
            // flat value 1 wherever the band weight is nonzero, tapering one octave beyond
            const double l = lambdas_[static_cast<size_t>(b)];
            double w;
            if (b == 0) {
                w = smooth_step_down(r / 2.0);
            } else if (b == n_bands() - 1) {
                w = 1.0 - smooth_step_down(4.0 * r / l);
            } else {
                w = smooth_step_down(r / (2.0 * l)) * (1.0 - smooth_step_down(8.0 * r / l));
            }
            cached_enlarged_[static_cast<size_t>(b)][idx] = w;
        }
    }
}

int DyadicBank::band_of(double lambda) const {
    for (int b = 0; b < n_bands(); ++b)
        if (lambdas_[static_cast<size_t>(b)] == lambda) return b;
    throw InvalidInput("DyadicBank: lambda " + std::to_string(lambda) + " not in bank (above Nyquist?)");
}

double DyadicBank::weight(int band, double r) const {
    const double l = lambdas_[static_cast<size_t>(band)];
    if (band == 0) return smooth_step_down(r);
    if (band == n_bands() - 1) return 1.0 - smooth_step_down(2.0 * r / l);
    return smooth_step_down(r / l) - smooth_step_down(2.0 * r / l);
}

namespace {
RealField apply_cached(const TorusGrid& grid, const RealField& f, const RealField& mult) {
    const Fft& fft = fft_for(grid);
    Spectrum s = fft.forward(f);
    s *= mult.cast<std::complex<double>>();
    return fft.inverse(s);
}
} // namespace

RealField DyadicBank::apply(const RealField& f, int band) const {
    return apply_cached(grid_, f, cached_[static_cast<size_t>(band)]);
}

RealField DyadicBank::apply_enlarged(const RealField& f, int band) const {
    return apply_cached(grid_, f, cached_enlarged_[static_cast<size_t>(band)]);
}

std::vector<double> DyadicBank::band_l2(const RealField& f) const {
    std::vector<double> out(static_cast<size_t>(n_bands()));
    const Fft& fft = fft_for(grid_);
    const Spectrum s = fft.forward(f);
    const SpectralLayout& layout = fft.layout();
    const double coeff_scale = 1.0 / static_cast<double>(grid_.size());
    for (int b = 0; b < n_bands(); ++b) {
        double acc = 0.0;
        const RealField& mult = cached_[static_cast<size_t>(b)];
        for (Index idx = 0; idx < layout.size; ++idx) {
            const auto k = layout.wavenumbers(idx);
            acc += layout.parseval_weight(k) * std::norm(s[idx] * coeff_scale * mult[idx]);
        }
        out[static_cast<size_t>(b)] = std::sqrt(grid_.volume() * acc);
    }
    return out;
}

RealField lowpass(const TorusGrid& grid, const RealField& f, double M) {
    return apply_multiplier(grid, f, [M](const Eigen::Vector3d& xi) {
        return smooth_step_down(xi.norm() / M);
    });
}

Eigen::ArrayXd project_temporal(const Eigen::ArrayXd& series, double t_span, double lambda) {
    const Eigen::Index n = series.size();
    if (n < 2) throw InvalidInput("project_temporal: need at least two samples");
    // 1-d bank over tau = 2 pi k / t_span with the same exact-partition profile
    double max_tau = EIGEN_PI * n / t_span;
    double top = 1.0;
    while (top < max_tau) top *= 2.0;
    if (lambda > top) throw InvalidInput("project_temporal: lambda above Nyquist");

    Eigen::ArrayXcd spec(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (Eigen::Index m = 0; m < n; ++m)
            acc += series[m] * std::exp(std::complex<double>(0.0, -2.0 * EIGEN_PI * j * m / n));
        spec[j] = acc;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        const double k = j <= n / 2 ? static_cast<double>(j) : static_cast<double>(j - n);
        const double tau = std::abs(2.0 * EIGEN_PI * k / t_span);
        double w;
        if (lambda == 1.0) {
            w = smooth_step_down(tau);
        } else if (lambda == top) {
            w = 1.0 - smooth_step_down(2.0 * tau / lambda);
        } else {
            w = smooth_step_down(tau / lambda) - smooth_step_down(2.0 * tau / lambda);
        }
        spec[j] *= w;
    }
    Eigen::ArrayXd out(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        std::complex<double> acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            acc += spec[j] * std::exp(std::complex<double>(0.0, 2.0 * EIGEN_PI * j * m / n));
        out[m] = acc.real() / static_cast<double>(n);
    }
    return out;
}

std::vector<RealField> project_spacetime(const TorusGrid& grid, const std::vector<RealField>& slices,
                                         double t_span, double lambda) {
    if (grid.dim() != 2)
        throw InvalidInput("project_spacetime: joint projections are implemented for 2-d space histories");
    const int nt = static_cast<int>(slices.size());
    if (nt < 4) throw InvalidInput("project_spacetime: need at least 4 slices");

    const Fft& fft = fft_for(grid);
    const Index nspec = fft.layout().size;
    Eigen::ArrayXXcd data(nspec, nt);
    for (int t = 0; t < nt; ++t) data.col(t) = fft.forward(slices[static_cast<size_t>(t)]);

    // temporal c2c transform across columns, one spectral row at a time
    Eigen::ArrayXcd line(nt), lineF(nt);
    fftw_plan fwd, bwd;
    {
        fwd = fftw_plan_dft_1d(nt, reinterpret_cast<fftw_complex*>(line.data()),
                               reinterpret_cast<fftw_complex*>(lineF.data()), FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
        bwd = fftw_plan_dft_1d(nt, reinterpret_cast<fftw_complex*>(lineF.data()),
                               reinterpret_cast<fftw_complex*>(line.data()), FFTW_BACKWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    const SpectralLayout& layout = fft.layout();
    double max_r = EIGEN_PI * nt / t_span;
    for (int a = 0; a < grid.dim(); ++a) max_r = std::max(max_r, grid.nyquist(a));
    double top = 1.0;
    while (top < max_r * std::sqrt(3.0)) top *= 2.0;

    for (Index idx = 0; idx < nspec; ++idx) {
        for (int t = 0; t < nt; ++t) line[t] = data(idx, t);
        fftw_execute_dft(fwd, reinterpret_cast<fftw_complex*>(line.data()),
                         reinterpret_cast<fftw_complex*>(lineF.data()));
        const auto k = layout.wavenumbers(idx);
        double xi2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            const double xi = grid.xi(a, k[static_cast<size_t>(a)]);
            xi2 += xi * xi;
        }
        for (int j = 0; j < nt; ++j) {
            const double kt = j <= nt / 2 ? static_cast<double>(j) : static_cast<double>(j - nt);
            const double tau = 2.0 * EIGEN_PI * kt / t_span;
            const double r = std::sqrt(xi2 + tau * tau);
            double w;
            if (lambda == 1.0) {
                w = smooth_step_down(r);
            } else if (lambda >= top) {
                w = 1.0 - smooth_step_down(2.0 * r / lambda);
            } else {
                w = smooth_step_down(r / lambda) - smooth_step_down(2.0 * r / lambda);
            }
            lineF[j] *= w;
        }
        fftw_execute_dft(bwd, reinterpret_cast<fftw_complex*>(lineF.data()),
                         reinterpret_cast<fftw_complex*>(line.data()));
        for (int t = 0; t < nt; ++t) data(idx, t) = line[t] / static_cast<double>(nt);
    }
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);

    std::vector<RealField> out(static_cast<size_t>(nt));
    for (int t = 0; t < nt; ++t) out[static_cast<size_t>(t)] = fft.inverse(Spectrum(data.col(t)));
    return out;
}

TruncatedCoefficients truncate_coefficients(const CoefficientSet& c, double lambda, TruncationScheme scheme) {
    TruncatedCoefficients out;
    out.scheme = scheme;
    out.lambda = lambda;
    const TorusGrid& grid = c.grid;
    if (scheme == TruncationScheme::A) {
        const double M = lambda / 16.0;
        const Material3d full = conservative_material_3d(c);
        out.e11 = lowpass(grid, full.e11, M);
        out.e12 = lowpass(grid, full.e12, M);
        out.e22 = lowpass(grid, full.e22, M);
        out.e33 = lowpass(grid, full.e33, M);
        out.m11 = lowpass(grid, full.m11, M);
        out.m12 = lowpass(grid, full.m12, M);
        out.m22 = lowpass(grid, full.m22, M);
        out.m33 = lowpass(grid, full.m33, M);
        return out;
    }
    // scheme B: truncate the Jacobian factor and material laws below lambda/8,
    // then recompose h A A^t eps with h = det(A_trunc)^{-1}.
    const double M = lambda / 16.0; // smooth cutoff is identity below M, supported below 2M = lambda/8
    out.a11 = lowpass(grid, c.a11, M);
    out.a21 = lowpass(grid, c.a21, M);
    out.a22 = lowpass(grid, c.a22, M);
    out.eps = lowpass(grid, c.eps, M);
    out.mu = lowpass(grid, c.mu, M);
    out.h = (out.a11 * out.a22).inverse();
    const RealField g11 = out.a11.square();
    const RealField g12 = out.a11 * out.a21;
    const RealField g22 = out.a21.square() + out.a22.square();
    out.e11 = out.h * g11 * out.eps;
    out.e12 = out.h * g12 * out.eps;
    out.e22 = out.h * g22 * out.eps;
    out.e33 = out.h * out.eps;
    out.m11 = out.h * g11 * out.mu;
    out.m12 = out.h * g12 * out.mu;
    out.m22 = out.h * g22 * out.mu;
    out.m33 = out.h * out.mu;
    return out;
}

double commutator_decay(const TorusGrid& grid, const RealField& kappa, const DyadicBank& bank,
                        int band, std::uint64_t seed, int iterations) {
    const RealField trunc = lowpass(grid, kappa, bank.lambda(band) / 16.0);
    auto commutator = [&](const RealField& f) {
        return RealField(trunc * bank.apply(f, band) - bank.apply(RealField(trunc * f), band));
    };
    // [kappa, S] is antisymmetric, so ||T||^2 is the top eigenvalue of -T T.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealField v(grid.size());
    for (Index i = 0; i < grid.size(); ++i) v[i] = gauss(rng);
    v /= std::sqrt(v.square().sum());
    double eig = 0.0;
    for (int it = 0; it < iterations; ++it) {
        RealField w = -commutator(commutator(v));
        const double norm = std::sqrt(w.square().sum());
        if (norm == 0.0) return 0.0;
        eig = norm;
        v = w / norm;
    }
    return std::sqrt(eig);
}

double besov_norm(const TorusGrid& grid, const RealField& kappa, double rho) {
    const DyadicBank bank(grid);
    double acc = 0.0;
    for (int b = 0; b < bank.n_bands(); ++b) {
        const double sup = bank.apply(kappa, b).abs().maxCoeff();
        acc += std::pow(bank.lambda(b), 2.0 * rho) * sup * sup;
    }
    return std::sqrt(acc);
}

RealField mollify(const TorusGrid& grid, const RealField& f, double n) {
    if (n <= 0.0) throw InvalidInput("mollify: scale must be positive");
    return apply_multiplier(grid, f, [n](const Eigen::Vector3d& xi) {
        double w = 1.0;
        for (int a = 0; a < 3; ++a) w *= std::exp(-xi[a] * xi[a] / (2.0 * n * n));
        return w;
    });
}

FieldState mollify_preserving_bc(const FieldState& state, double n) {
    const double margin = 2.0 / n;
    for (int i = 0; i < state.n_electric(); ++i) {
        const double scale = state.E(i).abs().maxCoeff();
        if (scale == 0.0) continue;
        if (strip_sup(state.grid, state.E(i), margin) > 1e-12 * scale)
            throw InvalidInput("mollify_preserving_bc: " + state.comp_name(i) +
                               " is supported within 2/n of the boundary plane");
    }
    FieldState out = state;
    for (auto& comp : out.comps) comp = mollify(state.grid, comp, n);
    return out;
}

} // namespace maxlab
