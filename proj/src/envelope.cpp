#include "maxlab/envelope.hpp"

#include <cmath>
#include <fstream>
#include <memory>

#include "maxlab/norms.hpp"

namespace maxlab {

namespace {
FrequencyEnvelope envelope_from_ctilde(std::vector<double> N, std::vector<double> c_tilde,
                                       double s, double delta) {
    FrequencyEnvelope env;
    env.s = s;
    env.delta = delta;
    env.N = std::move(N);
    env.c_tilde = std::move(c_tilde);
    const size_t n = env.N.size();
    env.c.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double best = 0.0;
        for (size_t j = 0; j < n; ++j) {
            const double ratio = std::min(env.N[i] / env.N[j], env.N[j] / env.N[i]);
            best = std::max(best, std::pow(ratio, delta) * env.c_tilde[j]);
        }
        env.c[i] = best;
    }
    return env;
}
} // namespace

FrequencyEnvelope sharp_envelope(const TorusGrid& grid, const RealField& u, double s, double delta,
                                 const DyadicBank* bank_in) {
    if (delta <= 0.0) throw InvalidInput("sharp_envelope: delta must be positive");
    std::unique_ptr<DyadicBank> owned;
    const DyadicBank* bank = bank_in;
    if (!bank) {
        owned = std::make_unique<DyadicBank>(grid);
        bank = owned.get();
    }
    std::vector<double> N(static_cast<size_t>(bank->n_bands()));
    std::vector<double> ct(static_cast<size_t>(bank->n_bands()));
    for (int b = 0; b < bank->n_bands(); ++b) {
        N[static_cast<size_t>(b)] = bank->lambda(b);
        ct[static_cast<size_t>(b)] = sobolev_norm(grid, bank->apply(u, b), s);
    }
    return envelope_from_ctilde(std::move(N), std::move(ct), s, delta);
}

FrequencyEnvelope sharp_envelope(const FieldState& state, double s, double delta) {
    const DyadicBank bank(state.grid);
    std::vector<double> N(static_cast<size_t>(bank.n_bands()));
    std::vector<double> ct(static_cast<size_t>(bank.n_bands()), 0.0);
    for (int b = 0; b < bank.n_bands(); ++b) {
        N[static_cast<size_t>(b)] = bank.lambda(b);
        double acc = 0.0;
        for (const RealField& comp : state.comps) {
            const double v = sobolev_norm(state.grid, bank.apply(comp, b), s);
            acc += v * v;
        }
        ct[static_cast<size_t>(b)] = std::sqrt(acc);
    }
    return envelope_from_ctilde(std::move(N), std::move(ct), s, delta);
}

EnvelopeCheck verify_envelope(const FrequencyEnvelope& env, double u_sobolev_norm) {
    EnvelopeCheck chk{};
    chk.energy_margin = -1.0;
    for (size_t i = 0; i < env.N.size(); ++i)
        chk.energy_margin = std::max(chk.energy_margin, env.c_tilde[i] - env.c[i]);
    chk.slow_margin = 0.0;
    for (size_t i = 0; i < env.N.size(); ++i) {
        for (size_t j = 0; j < env.N.size(); ++j) {
            if (env.c[j] == 0.0) continue;
            const double bound = std::pow(std::max(env.N[i] / env.N[j], env.N[j] / env.N[i]), env.delta);
            chk.slow_margin = std::max(chk.slow_margin, env.c[i] / (env.c[j] * bound));
        }
    }
    double sum_c2 = 0.0;
    for (double c : env.c) sum_c2 += c * c;
    chk.l2_ratio = u_sobolev_norm > 0.0 ? sum_c2 / (u_sobolev_norm * u_sobolev_norm) : 0.0;
    double c_delta = 1.0;
    for (int k = 1; k < 64; ++k) c_delta += 2.0 * std::pow(2.0, -2.0 * env.delta * k);
    chk.c_delta = c_delta;
    return chk;
}

void write_envelope_csv(const std::string& path, const FrequencyEnvelope& env) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("write_envelope_csv: cannot open " + path);
    out << "N,c_tilde,c\n";
    char buf[64];
    for (size_t i = 0; i < env.N.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%g,", env.N[i]);
        out << buf;
        std::snprintf(buf, sizeof(buf), "%.17g,", env.c_tilde[i]);
        out << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", env.c[i]);
        out << buf << "\n";
    }
}

} // namespace maxlab
