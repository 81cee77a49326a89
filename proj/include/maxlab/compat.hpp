#pragma once

#include "maxlab/coeffs.hpp"
#include "maxlab/fields.hpp"

namespace maxlab {

struct CompatRow {
    std::string id;
    int order = 0;
    double residual = 0.0;
    bool supported = true; // order-2 rows need vanishing normal derivative of mu at the wall
};

/// Boundary-plane L^2 residuals of the compatibility conditions up to the
/// requested order (0, 1 or 2). Traces are computed spectrally.
std::vector<CompatRow> compatibility_residuals(const FieldState& state, const CoefficientSet& coeffs,
                                               int order);

void write_compat_csv(const std::string& path, const std::vector<CompatRow>& rows);

} // namespace maxlab
