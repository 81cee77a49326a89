#include "maxlab/norms.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "maxlab/spectral.hpp"

namespace maxlab {

namespace {

double spectral_weighted_norm(const TorusGrid& grid, const RealField& f,
                              const std::function<double(double)>& weight2) {
    const Fft& fft = fft_for(grid);
    const Spectrum s = fft.forward(f);
    const SpectralLayout& layout = fft.layout();
    const double coeff_scale = 1.0 / static_cast<double>(grid.size());
    double acc = 0.0;
    for (Index idx = 0; idx < layout.size; ++idx) {
        const auto k = layout.wavenumbers(idx);
        double r2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            const double xi = grid.xi(a, k[static_cast<size_t>(a)]);
            r2 += xi * xi;
        }
        const double c2 = std::norm(s[idx] * coeff_scale);
        acc += layout.parseval_weight(k) * weight2(r2) * c2;
    }
    return std::sqrt(grid.volume() * acc);
}

} // namespace

double sobolev_norm(const TorusGrid& grid, const RealField& f, double s) {
    return spectral_weighted_norm(grid, f, [s](double r2) { return std::pow(1.0 + r2, s); });
}

double sobolev_norm(const FieldState& state, double s) {
    double acc = 0.0;
    for (const RealField& c : state.comps) {
        const double n = sobolev_norm(state.grid, c, s);
        acc += n * n;
    }
    return std::sqrt(acc);
}

double homogeneous_sobolev_norm(const TorusGrid& grid, const RealField& f, double s) {
    return spectral_weighted_norm(grid, f, [s](double r2) { return r2 == 0.0 ? 0.0 : std::pow(r2, s); });
}

double lq_norm(const TorusGrid& grid, const RealField& f, double q) {
    if (!f.allFinite()) throw InvalidInput("lq_norm: non-finite samples");
    if (q < 1.0) throw InvalidInput("lq_norm: q must be >= 1");
    if (std::isinf(q)) return f.abs().maxCoeff();
    return std::pow((f.abs().pow(q)).sum() * grid.cell_volume(), 1.0 / q);
}

double lq_norm(const TorusGrid& grid, const std::vector<const RealField*>& comps, double q) {
    RealField mag2 = RealField::Zero(grid.size());
    for (const RealField* c : comps) mag2 += c->square();
    return lq_norm(grid, RealField(mag2.sqrt()), q);
}

double lq_norm(const FieldState& state, double q) {
    std::vector<const RealField*> ptrs;
    for (const RealField& c : state.comps) ptrs.push_back(&c);
    return lq_norm(state.grid, ptrs, q);
}

double half_space_sobolev_norm(const TorusGrid& grid, const RealField& f, double s) {
    return sobolev_norm(grid, f, s) / std::sqrt(2.0);
}

void NormReport::record(double time, const std::string& key, double value) {
    if (!std::isfinite(value)) throw InvariantViolation("NormReport: non-finite value for " + key);
    if (!rows_.empty() && rows_.back().time == time) {
        rows_.back().values[key] = value;
        return;
    }
    NormRow row;
    row.time = time;
    row.values[key] = value;
    rows_.push_back(std::move(row));
}

std::string NormReport::mixed_key(double p, double q) {
    auto fmt = [](double v) {
        if (std::isinf(v)) return std::string("inf");
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", v);
        return std::string(buf);
    };
    return "L" + fmt(p) + "t_L" + fmt(q) + "x";
}

void NormReport::mixed_norm_accumulate(const FieldState& snapshot, double p, double q) {
    if (mixed_grid_ && !mixed_grid_->same_layout(snapshot.grid))
        throw InvalidInput("mixed_norm_accumulate: snapshot grid differs from previous snapshots");
    mixed_grid_ = snapshot.grid;
    MixedAcc& acc = mixed_[mixed_key(p, q)];
    if (!acc.times.empty() && snapshot.time <= acc.times.back())
        throw InvalidInput("mixed_norm_accumulate: snapshots must advance in time");
    acc.times.push_back(snapshot.time);
    acc.lq.push_back(lq_norm(snapshot, q));
}

double NormReport::mixed_norm(double p, double q) const {
    auto it = mixed_.find(mixed_key(p, q));
    if (it == mixed_.end() || it->second.times.empty())
        throw InvalidInput("mixed_norm: no snapshots accumulated for this (p, q)");
    const MixedAcc& acc = it->second;
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : acc.lq) m = std::max(m, v);
        return m;
    }
    if (acc.times.size() == 1) return acc.lq[0];
    double integral = 0.0;
    for (size_t i = 0; i + 1 < acc.times.size(); ++i) {
        const double dt = acc.times[i + 1] - acc.times[i];
        integral += 0.5 * dt * (std::pow(acc.lq[i], p) + std::pow(acc.lq[i + 1], p));
    }
    return std::pow(integral, 1.0 / p);
}

std::vector<std::pair<double, double>> NormReport::series(const std::string& key) const {
    std::vector<std::pair<double, double>> out;
    for (const NormRow& row : rows_) {
        auto it = row.values.find(key);
        if (it != row.values.end()) out.emplace_back(row.time, it->second);
    }
    return out;
}

void NormReport::write_csv(const std::string& path) const {
    // Union of keys, sorted, so the header is stable across runs.
    std::map<std::string, int> keys;
    for (const NormRow& row : rows_)
        for (const auto& kv : row.values) keys[kv.first] = 1;

    std::ofstream out(path);
    if (!out) throw InvalidInput("NormReport: cannot open " + path);
    out << "time";
    for (const auto& kv : keys) out << "," << kv.first;
    out << "\n";
    char buf[64];
    for (const NormRow& row : rows_) {
        std::snprintf(buf, sizeof(buf), "%.17g", row.time);
        out << buf;
        for (const auto& kv : keys) {
            auto it = row.values.find(kv.first);
            out << ",";
            if (it != row.values.end()) {
                std::snprintf(buf, sizeof(buf), "%.17g", it->second);
                out << buf;
            }
        }
        out << "\n";
    }
}

} // namespace maxlab
