#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "maxlab/errors.hpp"

namespace maxlab {

using Index = Eigen::Index;

/// Uniform periodic grid in 2 or 3 dimensions.
///
/// The last axis is the reflected (normal) axis; its point count must be even
/// so that x_d -> -x_d maps grid points to grid points. Storage convention is
/// row-major with the last axis fastest, matching FFTW.
class TorusGrid {
public:
    TorusGrid() = default;
    TorusGrid(std::vector<int> n_points, std::vector<double> lengths);

    static TorusGrid square(int dim, int n, double length);

    int dim() const { return static_cast<int>(n_.size()); }
    int n(int axis) const { return n_[static_cast<size_t>(axis)]; }
    double length(int axis) const { return length_[static_cast<size_t>(axis)]; }
    double spacing(int axis) const { return length_[static_cast<size_t>(axis)] / n_[static_cast<size_t>(axis)]; }
    int normal_axis() const { return dim() - 1; }

    Index size() const { return size_; }
    double volume() const;
    double cell_volume() const { return volume() / static_cast<double>(size()); }

    double coord(int axis, int index) const { return spacing(axis) * index; }

    /// Signed integer wavenumber for physical-space index along `axis`.
    int wavenumber(int axis, int k_index) const {
        const int na = n(axis);
        return k_index <= na / 2 ? k_index : k_index - na;
    }
    /// Physical frequency 2*pi*k/L for a signed wavenumber k.
    double xi(int axis, int k) const { return 2.0 * EIGEN_PI * k / length(axis); }
    double nyquist(int axis) const { return xi(axis, n(axis) / 2); }
    /// Smallest Nyquist frequency over all axes.
    double nyquist() const;

    Index flat(const std::array<int, 3>& idx) const;
    std::array<int, 3> unflat(Index flat) const;

    /// Index of the mirror point under x_axis -> -x_axis (torus reflection).
    int mirror(int axis, int i) const { return i == 0 ? 0 : n(axis) - i; }

    bool same_layout(const TorusGrid& other) const { return n_ == other.n_ && length_ == other.length_; }

private:
    std::vector<int> n_;
    std::vector<double> length_;
    Index size_ = 0;
};

} // namespace maxlab
