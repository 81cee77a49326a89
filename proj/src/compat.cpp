#include "maxlab/compat.hpp"

#include <fstream>

#include "maxlab/spectral.hpp"

namespace maxlab {

namespace {
double trace_residual(const TorusGrid& grid, const RealField& f) {
    return boundary_plane_l2(grid, f);
}
} // namespace

std::vector<CompatRow> compatibility_residuals(const FieldState& state, const CoefficientSet& coeffs,
                                               int order) {
    if (order < 0 || order > 2) throw InvalidInput("compatibility_residuals: order must be 0, 1 or 2");
    const TorusGrid& grid = state.grid;
    if (!grid.same_layout(coeffs.grid)) throw InvalidInput("compatibility_residuals: grid mismatch");
    const int d = grid.dim();
    const int nrm = grid.normal_axis();
    std::vector<CompatRow> rows;

    if (d == 3) {
        rows.push_back({"[E1]", 0, trace_residual(grid, state.E(0)), true});
        rows.push_back({"[E2]", 0, trace_residual(grid, state.E(1)), true});
        rows.push_back({"[H3]", 0, trace_residual(grid, state.H(2)), true});
        if (order >= 1) {
            rows.push_back({"[d3 H1]", 1, trace_residual(grid, derivative(grid, state.H(0), nrm)), true});
            rows.push_back({"[d3 H2]", 1, trace_residual(grid, derivative(grid, state.H(1), nrm)), true});
        }
        if (order >= 2) {
            // metric block (g_ij) = inverse of the cometric block
            const RealField det = coeffs.g11 * coeffs.g22 - coeffs.g12 * coeffs.g12;
            const RealField gl11 = coeffs.g22 / det;
            const RealField gl12 = -coeffs.g12 / det;
            const RealField gl22 = coeffs.g11 / det;
            const RealField inv_sqrt_g = coeffs.sqrt_g.inverse();
            const RealField w1 = derivative(grid, state.E(2), 1) - derivative(grid, state.E(1), 2);
            const RealField w2 = derivative(grid, state.E(0), 2) - derivative(grid, state.E(2), 0);
            const bool supported =
                boundary_plane_l2(grid, derivative(grid, coeffs.mu, nrm)) <= 1e-10;
            rows.push_back({"[d3 sqrtg^-1 (g21 w1 + g22 w2)]", 2,
                            trace_residual(grid, derivative(grid, RealField(inv_sqrt_g * (gl12 * w1 + gl22 * w2)), nrm)),
                            supported});
            rows.push_back({"[d3 sqrtg^-1 (g11 w1 + g12 w2)]", 2,
                            trace_residual(grid, derivative(grid, RealField(inv_sqrt_g * (gl11 * w1 + gl12 * w2)), nrm)),
                            supported});
        }
    } else {
        rows.push_back({"[E1]", 0, trace_residual(grid, state.E(0)), true});
        if (order >= 1) {
            rows.push_back({"[d2 H]", 1, trace_residual(grid, derivative(grid, state.H(), nrm)), true});
        }
        if (order >= 2) {
            const RealField inv_sqrt_g = coeffs.sqrt_g.inverse();
            const RealField curl = derivative(grid, state.E(1), 0) - derivative(grid, state.E(0), 1);
            const bool supported =
                boundary_plane_l2(grid, derivative(grid, coeffs.mu, nrm)) <= 1e-10;
            rows.push_back({"[d2 sqrtg^-1 (d1 E2 - d2 E1)]", 2,
                            trace_residual(grid, derivative(grid, RealField(inv_sqrt_g * curl), nrm)),
                            supported});
        }
    }
    return rows;
}

void write_compat_csv(const std::string& path, const std::vector<CompatRow>& rows) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("write_compat_csv: cannot open " + path);
    out << "condition,order,residual,supported\n";
    char buf[64];
    for (const CompatRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", r.residual);
        out << "\"" << r.id << "\"," << r.order << "," << buf << "," << (r.supported ? 1 : 0) << "\n";
    }
}

} // namespace maxlab
