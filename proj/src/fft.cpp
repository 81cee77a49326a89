#include "maxlab/fft.hpp"

#include <map>
#include <memory>
#include <mutex>

#include <fftw3.h>

namespace maxlab {

namespace {
// FFTW plan creation/destruction is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpectralLayout::SpectralLayout(const TorusGrid& grid) : dim(grid.dim()) {
    n = {1, 1, 1};
    nc = {1, 1, 1};
    for (int a = 0; a < dim; ++a) n[static_cast<size_t>(a)] = grid.n(a);
    for (int a = 0; a < dim - 1; ++a) nc[static_cast<size_t>(a)] = n[static_cast<size_t>(a)];
    nc[static_cast<size_t>(dim - 1)] = n[static_cast<size_t>(dim - 1)] / 2 + 1;
    size = 1;
    for (int a = 0; a < dim; ++a) size *= nc[static_cast<size_t>(a)];
}

std::array<int, 3> SpectralLayout::wavenumbers(Index flat) const {
    std::array<int, 3> k{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
        const int i = static_cast<int>(flat % nc[static_cast<size_t>(a)]);
        flat /= nc[static_cast<size_t>(a)];
        if (a == dim - 1) {
            k[static_cast<size_t>(a)] = i; // last axis stores 0..n/2 only
        } else {
            const int na = n[static_cast<size_t>(a)];
            k[static_cast<size_t>(a)] = i <= na / 2 ? i : i - na;
        }
    }
    return k;
}

double SpectralLayout::parseval_weight(const std::array<int, 3>& k) const {
    const int klast = k[static_cast<size_t>(dim - 1)];
    const int nlast = n[static_cast<size_t>(dim - 1)];
    return (klast == 0 || klast == nlast / 2) ? 1.0 : 2.0;
}

Fft::Fft(const TorusGrid& grid) : grid_(grid), layout_(grid) {
    std::array<int, 3> n{1, 1, 1};
    for (int a = 0; a < grid.dim(); ++a) n[static_cast<size_t>(a)] = grid.n(a);

    RealField rbuf(grid.size());
    Spectrum cbuf(layout_.size);
    std::lock_guard<std::mutex> lock(planner_mutex());
    // ESTIMATE keeps planning deterministic; UNALIGNED allows new-array execution
    // on any Eigen buffer.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plan_fwd_ = fftw_plan_dft_r2c(grid.dim(), n.data(), rbuf.data(),
                                  reinterpret_cast<fftw_complex*>(cbuf.data()), flags);
    plan_bwd_ = fftw_plan_dft_c2r(grid.dim(), n.data(),
                                  reinterpret_cast<fftw_complex*>(cbuf.data()), rbuf.data(), flags);
    if (!plan_fwd_ || !plan_bwd_) throw InvalidInput("Fft: planning failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

Spectrum Fft::forward(const RealField& f) const {
    if (f.size() != grid_.size()) throw InvalidInput("Fft::forward: field size mismatch");
    if (!f.allFinite()) throw InvalidInput("Fft::forward: non-finite samples");
    RealField in = f; // r2c may clobber input
    Spectrum out(layout_.size);
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), in.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

RealField Fft::inverse(const Spectrum& s) const {
    if (s.size() != layout_.size) throw InvalidInput("Fft::inverse: spectrum size mismatch");
    Spectrum in = s; // c2r clobbers input
    RealField out(grid_.size());
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_),
                         reinterpret_cast<fftw_complex*>(in.data()), out.data());
    out /= static_cast<double>(grid_.size());
    return out;
}

const Fft& fft_for(const TorusGrid& grid) {
    thread_local std::map<std::pair<std::vector<int>, std::vector<double>>, std::unique_ptr<Fft>> cache;
    std::vector<int> n(static_cast<size_t>(grid.dim()));
    std::vector<double> len(static_cast<size_t>(grid.dim()));
    for (int a = 0; a < grid.dim(); ++a) {
        n[static_cast<size_t>(a)] = grid.n(a);
        len[static_cast<size_t>(a)] = grid.length(a);
    }
    auto key = std::make_pair(std::move(n), std::move(len));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(std::move(key), std::make_unique<Fft>(grid)).first;
    return *it->second;
}

} // namespace maxlab
