#pragma once

#include <complex>

#include <Eigen/Dense>

#include "maxlab/grid.hpp"

namespace maxlab {

using RealField = Eigen::ArrayXd;
using Spectrum = Eigen::ArrayXcd;

/// Half-spectrum layout of a real-to-complex transform on `grid`:
/// dims n0 x ... x (n_{d-1}/2 + 1), row-major, last axis fastest.
struct SpectralLayout {
    explicit SpectralLayout(const TorusGrid& grid);

    int dim;
    std::array<int, 3> n;       // physical dims
    std::array<int, 3> nc;      // complex dims (last halved)
    Index size;                 // total complex entries

    /// Signed wavenumbers of a flat complex index.
    std::array<int, 3> wavenumbers(Index flat) const;
    /// Multiplicity of the mode in full-lattice sums (1 on self-conjugate planes, else 2).
    double parseval_weight(const std::array<int, 3>& k) const;
};

/// Forward/backward real FFTs for one grid. Plans are created once per
/// instance; execution is single-threaded and deterministic. Instances are
/// not safe for concurrent use; use per-thread instances (see fft_for()).
class Fft {
public:
    explicit Fft(const TorusGrid& grid);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    const TorusGrid& grid() const { return grid_; }
    const SpectralLayout& layout() const { return layout_; }

    Spectrum forward(const RealField& f) const;
    /// Inverse transform, normalized so that inverse(forward(f)) == f.
    RealField inverse(const Spectrum& s) const;

private:
    TorusGrid grid_;
    SpectralLayout layout_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
};

/// Per-thread cached Fft for a grid layout.
const Fft& fft_for(const TorusGrid& grid);

} // namespace maxlab
