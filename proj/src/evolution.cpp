#include "maxlab/evolution.hpp"

#include <cmath>

#include "maxlab/spectral.hpp"

namespace maxlab {

void EvolutionConfig::validate(int dim) const {
    if (T <= 0.0) throw InvalidInput("EvolutionConfig: T must be positive");
    if (cfl <= 0.0 || cfl > 0.5) throw InvalidInput("EvolutionConfig: cfl must lie in (0, 0.5]");
    if (dt_override && *dt_override == 0.0) throw InvalidInput("EvolutionConfig: dt must be nonzero");
    if (nonlinearity == Nonlinearity::Kerr2d && dim != 2)
        throw InvalidInput("EvolutionConfig: the Kerr nonlinearity is 2-d only");
    if (sample_every < 1) throw InvalidInput("EvolutionConfig: sample_every must be >= 1");
}

double EvolutionConfig::pick_dt(const TorusGrid& grid, double max_speed) const {
    if (dt_override) return *dt_override;
    double h = grid.spacing(0);
    for (int a = 1; a < grid.dim(); ++a) h = std::min(h, grid.spacing(a));
    return cfl * h / std::max(max_speed, 1e-12);
}

double RunHistory::energy_drift() const {
    if (energy.empty()) return 0.0;
    const double e0 = energy.front();
    if (e0 == 0.0) return 0.0;
    double worst = 0.0;
    for (double e : energy) worst = std::max(worst, std::abs(e - e0));
    return worst / std::abs(e0);
}

double RunHistory::charge_drift() const {
    if (charge_l2.empty()) return 0.0;
    const double c0 = charge_l2.front();
    double worst = 0.0;
    for (double c : charge_l2) worst = std::max(worst, std::abs(c - c0));
    // relative to the initial charge when charged, absolute otherwise
    return c0 > 1e-8 ? worst / c0 : worst;
}

namespace {

using Comps = std::vector<RealField>;

// Linear Maxwell in conservative variables on the reflected torus.
struct LinearSystem {
    const TorusGrid& grid;
    const CoefficientSet& coeffs;
    Material3d m3;
    Material2d m2;
    int dim;

    explicit LinearSystem(const CoefficientSet& c) : grid(c.grid), coeffs(c), dim(c.grid.dim()) {
        if (dim == 3) {
            m3 = conservative_material_3d(c);
        } else {
            m2 = conservative_material_2d(c);
        }
    }

    Comps D_from_E(const FieldState& s) const {
        if (dim == 3)
            return {RealField(m3.e11 * s.E(0) + m3.e12 * s.E(1)),
                    RealField(m3.e12 * s.E(0) + m3.e22 * s.E(1)), RealField(m3.e33 * s.E(2))};
        return {RealField(m2.e11 * s.E(0)), RealField(m2.e22 * s.E(1))};
    }
    Comps B_from_H(const FieldState& s) const {
        if (dim == 3)
            return {RealField(m3.m11 * s.H(0) + m3.m12 * s.H(1)),
                    RealField(m3.m12 * s.H(0) + m3.m22 * s.H(1)), RealField(m3.m33 * s.H(2))};
        return {RealField(m2.mu_eff * s.H())};
    }
    Comps E_from_D(const Comps& d) const {
        if (dim == 3)
            return {RealField(m3.ie11 * d[0] + m3.ie12 * d[1]),
                    RealField(m3.ie12 * d[0] + m3.ie22 * d[1]), RealField(m3.ie33 * d[2])};
        return {RealField(m2.ie11 * d[0]), RealField(m2.ie22 * d[1])};
    }
    Comps H_from_B(const Comps& b) const {
        if (dim == 3)
            return {RealField(m3.im11 * b[0] + m3.im12 * b[1]),
                    RealField(m3.im12 * b[0] + m3.im22 * b[1]), RealField(m3.im33 * b[2])};
        return {RealField(m2.imu * b[0])};
    }

    // dD/dt given H, and dB/dt given E
    Comps curl_h(const Comps& h) const {
        if (dim == 3) {
            auto c = curl3(grid, {&h[0], &h[1], &h[2]});
            return {std::move(c[0]), std::move(c[1]), std::move(c[2])};
        }
        auto g = perp_grad(grid, h[0]);
        return {std::move(g[0]), std::move(g[1])};
    }
    Comps minus_curl_e(const Comps& e) const {
        if (dim == 3) {
            auto c = curl3(grid, {&e[0], &e[1], &e[2]});
            return {RealField(-c[0]), RealField(-c[1]), RealField(-c[2])};
        }
        return {RealField(-curl2(grid, e[0], e[1]))};
    }

    double inner(const Comps& a, const Comps& b) const {
        double acc = 0.0;
        for (size_t i = 0; i < a.size(); ++i) acc += (a[i] * b[i]).sum();
        return acc * grid.cell_volume();
    }

    RealField rho(const Comps& d) const {
        std::vector<const RealField*> ptrs;
        for (const RealField& c : d) ptrs.push_back(&c);
        return divergence(grid, ptrs);
    }

    FieldState make_state(const FieldState& tmpl, double time, const Comps& e, const Comps& h) const {
        FieldState s = tmpl;
        s.time = time;
        for (size_t i = 0; i < e.size(); ++i) s.comps[i] = e[i];
        for (size_t i = 0; i < h.size(); ++i) s.comps[e.size() + i] = h[i];
        return s;
    }
};

void axpy(Comps& y, double a, const Comps& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

} // namespace

FieldState step_linear(const FieldState& state, const CoefficientSet& coeffs, const EvolutionConfig& config) {
    config.validate(state.dim());
    if (!state.grid.same_layout(coeffs.grid)) throw InvalidInput("step_linear: grid mismatch");
    const LinearSystem sys(coeffs);
    const double dt = config.pick_dt(state.grid, max_wave_speed(coeffs));

    Comps d = sys.D_from_E(state);
    Comps b = sys.B_from_H(state);
    if (config.integrator == EvolutionConfig::Integrator::Leapfrog) {
        axpy(b, 0.5 * dt, sys.minus_curl_e(sys.E_from_D(d)));
        axpy(d, dt, sys.curl_h(sys.H_from_B(b)));
        axpy(b, 0.5 * dt, sys.minus_curl_e(sys.E_from_D(d)));
    } else {
        const Comps d0 = d, b0 = b;
        Comps kd[4], kb[4];
        for (int stage = 0; stage < 4; ++stage) {
            Comps dd = d0, bb = b0;
            const double c = stage == 0 ? 0.0 : (stage == 3 ? 1.0 : 0.5);
            if (stage > 0) {
                axpy(dd, c * dt, kd[stage - 1]);
                axpy(bb, c * dt, kb[stage - 1]);
            }
            kd[stage] = sys.curl_h(sys.H_from_B(bb));
            kb[stage] = sys.minus_curl_e(sys.E_from_D(dd));
        }
        for (size_t i = 0; i < d.size(); ++i)
            d[i] += dt / 6.0 * (kd[0][i] + 2.0 * kd[1][i] + 2.0 * kd[2][i] + kd[3][i]);
        for (size_t i = 0; i < b.size(); ++i)
            b[i] += dt / 6.0 * (kb[0][i] + 2.0 * kb[1][i] + 2.0 * kb[2][i] + kb[3][i]);
    }
    return sys.make_state(state, state.time + dt, sys.E_from_D(d), sys.H_from_B(b));
}

RunHistory run_linear(const FieldState& initial, const CoefficientSet& coeffs, const EvolutionConfig& config) {
    config.validate(initial.dim());
    if (!initial.grid.same_layout(coeffs.grid)) throw InvalidInput("run_linear: grid mismatch");
    const LinearSystem sys(coeffs);
    const TorusGrid& grid = initial.grid;

    const double dt_nominal = config.pick_dt(grid, max_wave_speed(coeffs));
    if (dt_nominal <= 0.0) throw InvalidInput("run_linear: dt must be positive");
    const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(config.T / dt_nominal - 1e-9)));
    const double dt = config.T / static_cast<double>(nsteps);

    RunHistory hist;
    hist.dt = dt;
    hist.steps = nsteps;

    Comps d = sys.D_from_E(initial);
    Comps b = sys.B_from_H(initial);
    Comps e = sys.E_from_D(d);
    Comps mce = sys.minus_curl_e(e); // cached curl of the current synchronized E

    auto sample = [&](double time, const Comps& dd, const Comps& bb) {
        const Comps ee = sys.E_from_D(dd);
        const Comps hh = sys.H_from_B(bb);
        hist.times.push_back(time);
        if (config.store_states) hist.states.push_back(sys.make_state(initial, time, ee, hh));
        hist.charge_l2.push_back(std::sqrt(sys.rho(dd).square().sum() * grid.cell_volume()));
        hist.energy_m.push_back(0.5 * (sys.inner(dd, ee) + sys.inner(bb, hh)));
    };

    const bool leapfrog = config.integrator == EvolutionConfig::Integrator::Leapfrog;
    sample(initial.time, d, b);

    for (long n = 0; n < nsteps; ++n) {
        if (leapfrog) {
            Comps bh = b;
            axpy(bh, 0.5 * dt, mce);
            const Comps hh = sys.H_from_B(bh);
            const Comps dprev = d;
            axpy(d, dt, sys.curl_h(hh));
            e = sys.E_from_D(d);
            // staggered invariant <B_half, H_half> + <D_n, E_{n+1}>
            const double q = sys.inner(bh, hh) + sys.inner(dprev, e);
            if (n == 0) hist.energy.push_back(q);
            hist.energy.push_back(q);
            mce = sys.minus_curl_e(e);
            b = bh;
            axpy(b, 0.5 * dt, mce);
        } else {
            FieldState cur = sys.make_state(initial, initial.time + n * dt, sys.E_from_D(d), sys.H_from_B(b));
            EvolutionConfig one = config;
            one.dt_override = dt;
            const FieldState next = step_linear(cur, coeffs, one);
            d = sys.D_from_E(next);
            b = sys.B_from_H(next);
            const double q = sys.inner(d, sys.E_from_D(d)) + sys.inner(b, sys.H_from_B(b));
            if (n == 0) hist.energy.push_back(q);
            hist.energy.push_back(q);
        }
        if ((n + 1) % config.sample_every == 0 || n + 1 == nsteps)
            sample(initial.time + (n + 1) * dt, d, b);
    }
    // align the per-step invariant list with samples: keep first and the one per sampled step
    std::vector<double> sampled_energy;
    sampled_energy.push_back(hist.energy.front());
    for (long n = 0; n < nsteps; ++n)
        if ((n + 1) % config.sample_every == 0 || n + 1 == nsteps)
            sampled_energy.push_back(hist.energy[static_cast<size_t>(n) + 1]);
    hist.energy = std::move(sampled_energy);
    return hist;
}

double kerr_field_magnitude(double d) {
    if (d < 0.0) throw InvalidInput("kerr_field_magnitude: magnitude must be nonnegative");
    double e;
    if (d < 1e-3) {
        const double d2 = d * d;
        e = d * (1.0 - d2 * (1.0 - 3.0 * d2)); // series start, refined below
    } else {
        const double disc = std::sqrt(0.25 * d * d + 1.0 / 27.0);
        e = std::cbrt(0.5 * d + disc) - std::cbrt(disc - 0.5 * d);
    }
    for (int it = 0; it < 2; ++it) {
        const double f = e * (1.0 + e * e) - d;
        e -= f / (1.0 + 3.0 * e * e);
    }
    return e;
}

void kerr_invert(const RealField& d1, const RealField& d2, RealField& e1, RealField& e2) {
    const Index n = d1.size();
    e1.resize(n);
    e2.resize(n);
    for (Index i = 0; i < n; ++i) {
        const double dm = std::sqrt(d1[i] * d1[i] + d2[i] * d2[i]);
        if (dm == 0.0) {
            e1[i] = 0.0;
            e2[i] = 0.0;
            continue;
        }
        const double scale = kerr_field_magnitude(dm) / dm;
        e1[i] = scale * d1[i];
        e2[i] = scale * d2[i];
    }
}

EffectivePermittivity2d effective_permittivity(const TorusGrid& grid, const RealField& e1, const RealField& e2) {
    (void)grid;
    EffectivePermittivity2d out;
    const RealField mag2 = e1.square() + e2.square();
    out.m11 = 1.0 + mag2 + 2.0 * e1.square();
    out.m12 = 2.0 * e1 * e2;
    out.m22 = 1.0 + mag2 + 2.0 * e2.square();
    return out;
}

Eigen::Matrix2d effective_permittivity(const Eigen::Vector2d& e) {
    Eigen::Matrix2d m = (1.0 + e.squaredNorm()) * Eigen::Matrix2d::Identity();
    m += 2.0 * e * e.transpose();
    return m;
}

namespace {

struct KerrSystem {
    const TorusGrid& grid;

    Comps D_from_E(const RealField& e1, const RealField& e2) const {
        const RealField f = 1.0 + e1.square() + e2.square();
        return {RealField(f * e1), RealField(f * e2)};
    }
    void E_from_D(const Comps& d, RealField& e1, RealField& e2) const { kerr_invert(d[0], d[1], e1, e2); }

    RealField minus_curl_e(const RealField& e1, const RealField& e2) const {
        return RealField(-curl2(grid, e1, e2));
    }
};

} // namespace

FieldState step_kerr_2d(const FieldState& state, const EvolutionConfig& config) {
    if (state.dim() != 2) throw InvalidInput("step_kerr_2d: 2-d states only");
    EvolutionConfig cfg = config;
    cfg.nonlinearity = EvolutionConfig::Nonlinearity::Kerr2d;
    cfg.validate(2);
    const KerrSystem sys{state.grid};
    const double dt = config.pick_dt(state.grid, std::sqrt(1.0 + 3.0 * state.comps[0].square().maxCoeff()));

    Comps d = sys.D_from_E(state.E(0), state.E(1));
    RealField h = state.H();
    RealField e1 = state.E(0), e2 = state.E(1);

    h += 0.5 * dt * sys.minus_curl_e(e1, e2);
    auto g = perp_grad(state.grid, h);
    d[0] += dt * g[0];
    d[1] += dt * g[1];
    sys.E_from_D(d, e1, e2);
    h += 0.5 * dt * sys.minus_curl_e(e1, e2);

    FieldState out = state;
    out.time = state.time + dt;
    out.comps[0] = e1;
    out.comps[1] = e2;
    out.comps[2] = h;
    return out;
}

RunHistory run_kerr_2d(const FieldState& initial, const EvolutionConfig& config) {
    if (initial.dim() != 2) throw InvalidInput("run_kerr_2d: 2-d states only");
    EvolutionConfig cfg = config;
    cfg.nonlinearity = EvolutionConfig::Nonlinearity::Kerr2d;
    cfg.validate(2);
    const TorusGrid& grid = initial.grid;
    const KerrSystem sys{grid};

    const double speed = std::sqrt(1.0 + 3.0 * (initial.E(0).square() + initial.E(1).square()).maxCoeff());
    const double dt_nominal = config.pick_dt(grid, speed);
    if (dt_nominal <= 0.0) throw InvalidInput("run_kerr_2d: dt must be positive");
    const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(config.T / dt_nominal - 1e-9)));
    const double dt = config.T / static_cast<double>(nsteps);

    RunHistory hist;
    hist.dt = dt;
    hist.steps = nsteps;

    Comps d = sys.D_from_E(initial.E(0), initial.E(1));
    RealField h = initial.H();
    RealField e1 = initial.E(0), e2 = initial.E(1);
    RealField mce = sys.minus_curl_e(e1, e2);

    auto sample = [&](double time) {
        hist.times.push_back(time);
        if (config.store_states) {
            FieldState s = initial;
            s.time = time;
            s.comps[0] = e1;
            s.comps[1] = e2;
            s.comps[2] = h; // synchronized by construction below
            hist.states.push_back(std::move(s));
        }
        std::vector<const RealField*> dp{&d[0], &d[1]};
        hist.charge_l2.push_back(std::sqrt(divergence(grid, dp).square().sum() * grid.cell_volume()));
        const double m = ((d[0] * e1 + d[1] * e2 + h * h).sum()) * grid.cell_volume();
        hist.energy_m.push_back(0.5 * m);
        hist.energy.push_back(0.5 * m); // no exact discrete invariant in the quasilinear case
    };

    sample(initial.time);
    for (long n = 0; n < nsteps; ++n) {
        RealField hh = h + 0.5 * dt * mce;
        auto g = perp_grad(grid, hh);
        d[0] += dt * g[0];
        d[1] += dt * g[1];
        sys.E_from_D(d, e1, e2);
        mce = sys.minus_curl_e(e1, e2);
        h = hh + 0.5 * dt * mce;
        if ((n + 1) % config.sample_every == 0 || n + 1 == nsteps) sample(initial.time + (n + 1) * dt);
    }
    return hist;
}

RealField charge(const FieldState& state, const CoefficientSet& coeffs) {
    const LinearSystem sys(coeffs);
    return sys.rho(sys.D_from_E(state));
}

RealField kerr_charge(const FieldState& state) {
    const RealField f = 1.0 + state.E(0).square() + state.E(1).square();
    const RealField d1 = f * state.E(0), d2 = f * state.E(1);
    std::vector<const RealField*> dp{&d1, &d2};
    return divergence(state.grid, dp);
}

} // namespace maxlab
