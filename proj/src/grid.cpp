#include "maxlab/grid.hpp"

namespace maxlab {

TorusGrid::TorusGrid(std::vector<int> n_points, std::vector<double> lengths)
    : n_(std::move(n_points)), length_(std::move(lengths)) {
    if (n_.size() != length_.size() || (n_.size() != 2 && n_.size() != 3))
        throw InvalidInput("TorusGrid: dim must be 2 or 3 with matching lengths");
    size_ = 1;
    for (size_t a = 0; a < n_.size(); ++a) {
        if (n_[a] < 4) throw InvalidInput("TorusGrid: need at least 4 points per axis");
        if (length_[a] <= 0.0) throw InvalidInput("TorusGrid: lengths must be positive");
        size_ *= n_[a];
    }
    if (n_.back() % 2 != 0)
        throw InvalidInput("TorusGrid: point count on the normal axis must be even");
}

TorusGrid TorusGrid::square(int dim, int n, double length) {
    return TorusGrid(std::vector<int>(static_cast<size_t>(dim), n),
                     std::vector<double>(static_cast<size_t>(dim), length));
}

double TorusGrid::volume() const {
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) v *= length(a);
    return v;
}

double TorusGrid::nyquist() const {
    double m = nyquist(0);
    for (int a = 1; a < dim(); ++a) m = std::min(m, nyquist(a));
    return m;
}

Index TorusGrid::flat(const std::array<int, 3>& idx) const {
    Index f = idx[0];
    for (int a = 1; a < dim(); ++a) f = f * n(a) + idx[static_cast<size_t>(a)];
    return f;
}

std::array<int, 3> TorusGrid::unflat(Index flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim() - 1; a >= 0; --a) {
        idx[static_cast<size_t>(a)] = static_cast<int>(flat % n(a));
        flat /= n(a);
    }
    return idx;
}

} // namespace maxlab
