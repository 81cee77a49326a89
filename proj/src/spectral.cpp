#include "maxlab/spectral.hpp"

namespace maxlab {

RealField apply_multiplier(const TorusGrid& grid, const RealField& f,
                           const std::function<double(const Eigen::Vector3d&)>& m) {
    const Fft& fft = fft_for(grid);
    Spectrum s = fft.forward(f);
    const SpectralLayout& layout = fft.layout();
    for (Index idx = 0; idx < layout.size; ++idx) {
        const auto k = layout.wavenumbers(idx);
        Eigen::Vector3d xi = Eigen::Vector3d::Zero();
        for (int a = 0; a < grid.dim(); ++a) xi[a] = grid.xi(a, k[static_cast<size_t>(a)]);
        s[idx] *= m(xi);
    }
    return fft.inverse(s);
}

namespace {

// i*xi_axis with the Nyquist plane of the differentiated axis zeroed.
Spectrum derivative_spectrum(const Fft& fft, const Spectrum& s, int axis) {
    const TorusGrid& grid = fft.grid();
    const SpectralLayout& layout = fft.layout();
    Spectrum out(layout.size);
    const std::complex<double> iunit(0.0, 1.0);
    for (Index idx = 0; idx < layout.size; ++idx) {
        const auto k = layout.wavenumbers(idx);
        const int ka = k[static_cast<size_t>(axis)];
        out[idx] = std::abs(ka) == grid.n(axis) / 2 ? 0.0 : s[idx] * (iunit * grid.xi(axis, ka));
    }
    return out;
}

} // namespace

RealField derivative(const TorusGrid& grid, const RealField& f, int axis) {
    const Fft& fft = fft_for(grid);
    return fft.inverse(derivative_spectrum(fft, fft.forward(f), axis));
}

double grad_sup_norm(const TorusGrid& grid, const RealField& f) {
    const Fft& fft = fft_for(grid);
    const Spectrum s = fft.forward(f);
    RealField mag2 = RealField::Zero(grid.size());
    for (int a = 0; a < grid.dim(); ++a) {
        RealField d = fft.inverse(derivative_spectrum(fft, s, a));
        mag2 += d.square();
    }
    return std::sqrt(mag2.maxCoeff());
}

std::array<RealField, 3> curl3(const TorusGrid& grid, const std::array<const RealField*, 3>& v) {
    const Fft& fft = fft_for(grid);
    std::array<Spectrum, 3> s;
    for (int c = 0; c < 3; ++c) s[static_cast<size_t>(c)] = fft.forward(*v[static_cast<size_t>(c)]);
    auto d = [&](int comp, int axis) { return derivative_spectrum(fft, s[static_cast<size_t>(comp)], axis); };
    std::array<RealField, 3> out;
    out[0] = fft.inverse(Spectrum(d(2, 1) - d(1, 2)));
    out[1] = fft.inverse(Spectrum(d(0, 2) - d(2, 0)));
    out[2] = fft.inverse(Spectrum(d(1, 0) - d(0, 1)));
    return out;
}

RealField curl2(const TorusGrid& grid, const RealField& v1, const RealField& v2) {
    const Fft& fft = fft_for(grid);
    return fft.inverse(Spectrum(derivative_spectrum(fft, fft.forward(v2), 0) -
                                derivative_spectrum(fft, fft.forward(v1), 1)));
}

std::array<RealField, 2> perp_grad(const TorusGrid& grid, const RealField& h) {
    const Fft& fft = fft_for(grid);
    const Spectrum s = fft.forward(h);
    return {fft.inverse(derivative_spectrum(fft, s, 1)),
            RealField(-fft.inverse(derivative_spectrum(fft, s, 0)))};
}

RealField divergence(const TorusGrid& grid, const std::vector<const RealField*>& v) {
    const Fft& fft = fft_for(grid);
    Spectrum acc = Spectrum::Zero(fft.layout().size);
    for (int a = 0; a < grid.dim(); ++a)
        acc += derivative_spectrum(fft, fft.forward(*v[static_cast<size_t>(a)]), a);
    return fft.inverse(acc);
}

} // namespace maxlab
