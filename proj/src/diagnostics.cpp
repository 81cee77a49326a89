#include "maxlab/diagnostics.hpp"

#include <cmath>

#include "maxlab/spectral.hpp"

namespace maxlab {

AdmissibilityResult admissible(double p, double q, int dim) {
    AdmissibilityResult res;
    if (dim != 2 && dim != 3) {
        res.rejection = "dim must be 2 or 3";
        return res;
    }
    if (!(p >= 2.0) || !(q >= 2.0)) {
        res.rejection = "p, q >= 2 required";
        return res;
    }
    if (std::isinf(q)) {
        res.rejection = "q < infinity required";
        return res;
    }
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    const double tol = 1e-12;
    AdmissibleTriple t;
    t.p = p;
    t.q = q;
    t.dim = dim;
    if (dim == 3) {
        if (3.0 * ip + 2.0 / q > 1.0 + tol) {
            res.rejection = "3/p + 2/q <= 1 violated";
            return res;
        }
        t.gamma = 3.0 * (0.5 - 1.0 / q) - ip;
        t.delta_max = 3.0 / q;
    } else {
        if (3.0 * ip + 1.0 / q > 0.5 + tol) {
            res.rejection = "3/p + 1/q <= 1/2 violated";
            return res;
        }
        t.gamma = 2.0 * (0.5 - 1.0 / q) - ip;
        t.delta_max = 0.5;
    }
    res.triple = t;
    return res;
}

double energy_M(const FieldState& state, const CoefficientSet& coeffs) {
    const TorusGrid& grid = state.grid;
    if (!grid.same_layout(coeffs.grid)) throw InvalidInput("energy_M: grid mismatch");
    RealField density = RealField::Zero(grid.size());
    if (grid.dim() == 3) {
        const Material3d m = conservative_material_3d(coeffs);
        density += (m.e11 * state.E(0) + m.e12 * state.E(1)) * state.E(0);
        density += (m.e12 * state.E(0) + m.e22 * state.E(1)) * state.E(1);
        density += m.e33 * state.E(2) * state.E(2);
        density += (m.m11 * state.H(0) + m.m12 * state.H(1)) * state.H(0);
        density += (m.m12 * state.H(0) + m.m22 * state.H(1)) * state.H(1);
        density += m.m33 * state.H(2) * state.H(2);
    } else {
        const Material2d m = conservative_material_2d(coeffs);
        density += m.e11 * state.E(0).square() + m.e22 * state.E(1).square();
        density += m.mu_eff * state.H().square();
    }
    return 0.5 * density.sum() * grid.cell_volume();
}

namespace {

// centered stencils on uniform samples: 4th-order first/second derivative,
// 2nd-order third derivative
RealField fd1(const std::vector<FieldState>& s, size_t i, int comp, double dt) {
    auto c = [&](size_t j) -> const RealField& { return s[j].comps[static_cast<size_t>(comp)]; };
    return RealField((c(i - 2) - 8.0 * c(i - 1) + 8.0 * c(i + 1) - c(i + 2)) / (12.0 * dt));
}
RealField fd2(const std::vector<FieldState>& s, size_t i, int comp, double dt) {
    auto c = [&](size_t j) -> const RealField& { return s[j].comps[static_cast<size_t>(comp)]; };
    return RealField((-c(i - 2) + 16.0 * c(i - 1) - 30.0 * c(i) + 16.0 * c(i + 1) - c(i + 2)) /
                     (12.0 * dt * dt));
}
RealField fd3(const std::vector<FieldState>& s, size_t i, int comp, double dt) {
    auto c = [&](size_t j) -> const RealField& { return s[j].comps[static_cast<size_t>(comp)]; };
    return RealField((-c(i - 2) + 2.0 * c(i - 1) - 2.0 * c(i + 1) + c(i + 2)) / (2.0 * dt * dt * dt));
}

} // namespace

BootstrapSeries bootstrap_functionals(const RunHistory& history, bool kerr) {
    const auto& s = history.states;
    if (s.size() < 5)
        throw InvalidInput("bootstrap_functionals: history too short for the centered stencils");
    const TorusGrid& grid = s.front().grid;
    const double dt = history.times[1] - history.times[0];
    const double vol = grid.cell_volume();
    const int d = grid.dim();
    const int nc = s.front().n_comps();

    BootstrapSeries out;
    for (size_t i = 2; i + 2 < s.size(); ++i) {
        // eps1 from the current electric field (identity in the linear vacuum case)
        RealField p11, p12, p22;
        if (kerr) {
            const auto eff = effective_permittivity(grid, s[i].E(0), s[i].E(1));
            p11 = eff.m11;
            p12 = eff.m12;
            p22 = eff.m22;
        } else {
            p11 = RealField::Ones(grid.size());
            p12 = RealField::Zero(grid.size());
            p22 = p11;
        }
        auto eps1_quad = [&](const RealField& v1, const RealField& v2) {
            return ((p11 * v1 + p12 * v2) * v1 + (p12 * v1 + p22 * v2) * v2).sum() * vol;
        };
        auto l2sq = [&](const RealField& v) { return v.square().sum() * vol; };

        double a1 = 0.0;
        // zeroth, first and second time derivatives of E (quadratic form) and H (plain)
        for (int order = 0; order <= 2; ++order) {
            RealField e1, e2;
            if (order == 0) {
                e1 = s[i].E(0);
                e2 = s[i].E(1);
            } else if (order == 1) {
                e1 = fd1(s, i, 0, dt);
                e2 = fd1(s, i, 1, dt);
            } else {
                e1 = fd2(s, i, 0, dt);
                e2 = fd2(s, i, 1, dt);
            }
            a1 += eps1_quad(e1, e2);
            if (d == 3) {
                const RealField e3 = order == 0 ? s[i].E(2) : (order == 1 ? fd1(s, i, 2, dt) : fd2(s, i, 2, dt));
                a1 += l2sq(e3);
            }
            for (int c = d; c < nc; ++c) {
                const RealField h = order == 0 ? s[i].comps[static_cast<size_t>(c)]
                                               : (order == 1 ? fd1(s, i, c, dt) : fd2(s, i, c, dt));
                a1 += l2sq(h);
            }
        }
        double a2 = a1;
        if (i >= 2 && i + 2 < s.size()) {
            RealField e1 = fd3(s, i, 0, dt), e2 = fd3(s, i, 1, dt);
            a2 += eps1_quad(e1, e2);
            if (d == 3) a2 += l2sq(fd3(s, i, 2, dt));
            for (int c = d; c < nc; ++c) a2 += l2sq(fd3(s, i, c, dt));
        }

        // space-time derivative sup over all components
        double sup = 0.0;
        double h2 = 0.0;
        for (int c = 0; c < nc; ++c) {
            sup = std::max(sup, grad_sup_norm(grid, s[i].comps[static_cast<size_t>(c)]));
            sup = std::max(sup, fd1(s, i, c, dt).abs().maxCoeff());
            const double n2 = sobolev_norm(grid, s[i].comps[static_cast<size_t>(c)], 2.0);
            h2 += n2 * n2;
        }
        out.times.push_back(history.times[i]);
        out.a1.push_back(a1);
        out.a2.push_back(a2);
        out.dxu_sup.push_back(sup);
        out.b.push_back(sup + std::sqrt(h2));
    }

    // measured Gronwall constant: max over t of log(A1(t)/A1(0)) / int_0^t ||d u||_inf
    double c_meas = 0.0;
    double integral = 0.0;
    for (size_t i = 1; i < out.times.size(); ++i) {
        const double step = out.times[i] - out.times[i - 1];
        integral += 0.5 * step * (out.dxu_sup[i] + out.dxu_sup[i - 1]);
        if (out.a1[0] > 0.0 && integral > 0.0) {
            const double growth = std::log(out.a1[i] / out.a1[0]);
            c_meas = std::max(c_meas, growth / integral);
        }
    }
    out.gronwall_c = c_meas;
    return out;
}

HelmholtzRatio helmholtz_ratio(const TorusGrid& grid, const std::vector<const RealField*>& e_comps,
                               double s, HelmholtzMode mode) {
    const int d = grid.dim();
    if (static_cast<int>(e_comps.size()) != d) throw InvalidInput("helmholtz_ratio: expected d components");
    if (mode == HelmholtzMode::Half) {
        // the tangential components must satisfy the wall condition
        for (int c = 0; c + 1 < d; ++c)
            if (boundary_plane_l2(grid, *e_comps[static_cast<size_t>(c)]) > 1e-8)
                throw InvalidInput("helmholtz_ratio: tangential trace does not vanish at the wall");
    }
    const double half_scale = mode == HelmholtzMode::Half ? 1.0 / std::sqrt(2.0) : 1.0;

    double curl_h = 0.0;
    if (d == 2) {
        curl_h = sobolev_norm(grid, curl2(grid, *e_comps[0], *e_comps[1]), s);
    } else {
        auto c = curl3(grid, {e_comps[0], e_comps[1], e_comps[2]});
        for (const RealField& comp : c) {
            const double n = sobolev_norm(grid, comp, s);
            curl_h += n * n;
        }
        curl_h = std::sqrt(curl_h);
    }
    const double div_h = sobolev_norm(grid, divergence(grid, e_comps), s);
    double l2 = 0.0, hs1 = 0.0;
    for (const RealField* comp : e_comps) {
        const double n0 = sobolev_norm(grid, *comp, 0.0);
        const double n1 = sobolev_norm(grid, *comp, s + 1.0);
        l2 += n0 * n0;
        hs1 += n1 * n1;
    }
    l2 = std::sqrt(l2);
    hs1 = std::sqrt(hs1);

    HelmholtzRatio out;
    out.lhs = half_scale * hs1;
    out.rhs = half_scale * (curl_h + div_h + l2);
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;

    if (mode == HelmholtzMode::Torus) {
        // pointwise Fourier identity |xi x v|^2 + |xi . v|^2 = |xi|^2 |v|^2
        double grad2 = 0.0;
        for (const RealField* comp : e_comps) {
            const double n = homogeneous_sobolev_norm(grid, *comp, 1.0);
            grad2 += n * n;
        }
        double div2 = homogeneous_sobolev_norm(grid, divergence(grid, e_comps), 0.0);
        div2 *= div2;
        double curl2sq = 0.0;
        if (d == 2) {
            const double n = homogeneous_sobolev_norm(grid, curl2(grid, *e_comps[0], *e_comps[1]), 0.0);
            curl2sq = n * n;
        } else {
            auto c = curl3(grid, {e_comps[0], e_comps[1], e_comps[2]});
            for (const RealField& comp : c) {
                const double n = homogeneous_sobolev_norm(grid, comp, 0.0);
                curl2sq += n * n;
            }
        }
        out.identity_defect = grad2 > 0.0 ? std::abs(curl2sq + div2 - grad2) / grad2 : 0.0;
    }
    return out;
}

double strichartz_ratio(const RunHistory& history, const AdmissibleTriple& triple, double delta,
                        double rho0_sobolev, double /*rho0_sobolev_homogeneous*/) {
    if (history.states.empty()) throw InvalidInput("strichartz_ratio: history carries no states");
    if (delta <= 0.0 || delta > triple.delta_max)
        throw InvalidInput("strichartz_ratio: delta outside (0, delta_max]");

    const FieldState& u0 = history.states.front();
    const double data_norm = sobolev_norm(u0, triple.gamma + delta);
    const double denom = data_norm + rho0_sobolev;
    if (denom < 1e-14) throw InvalidInput("strichartz_ratio: zero data rejected (0/0 guarded)");

    NormReport report;
    for (const FieldState& s : history.states) report.mixed_norm_accumulate(s, triple.p, triple.q);
    return report.mixed_norm(triple.p, triple.q) / denom;
}

} // namespace maxlab
