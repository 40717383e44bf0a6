#pragma once

// Test-only reference implementations, kept independent of the library's
// propagation path: direct Fresnel-integral quadrature (Riemann sum over the
// aperture) evaluated point by point.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fringekit/wavefield.hpp"

namespace oracles {

using fringekit::ScalarField;
using complexd = std::complex<double>;

/// Fresnel diffraction integral U(x) = e^{ikz}/sqrt(i lambda z) *
/// Integral U0(x') e^{i pi (x-x')^2/(lambda z)} dx', as a plain Riemann sum,
/// evaluated at arbitrary output positions.
inline std::vector<complexd> fresnel_quadrature(const ScalarField& in, double z,
                                                const std::vector<double>& out_positions) {
    const double lambda = in.wavelength();
    const double k = 2.0 * std::numbers::pi / lambda;
    const complexd pref =
        std::polar(1.0 / std::sqrt(lambda * z), k * z - 0.25 * std::numbers::pi);
    const double chirp = std::numbers::pi / (lambda * z);

    std::vector<complexd> out(out_positions.size());
    for (std::size_t j = 0; j < out_positions.size(); ++j) {
        const double x = out_positions[j];
        complexd acc(0.0, 0.0);
        for (std::size_t i = 0; i < in.size(); ++i) {
            const double dxp = x - in.position(i);
            acc += in[i] * std::polar(1.0, chirp * dxp * dxp);
        }
        out[j] = pref * acc * in.pitch();
    }
    return out;
}

/// Same-grid convenience wrapper.
inline std::vector<complexd> fresnel_quadrature(const ScalarField& in, double z) {
    return fresnel_quadrature(in, z, in.positions());
}

inline double relative_l2(const std::vector<complexd>& a, const std::vector<complexd>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

/// Spacing of adjacent intensity minima around profile center, from
/// quadratically refined local minima.
inline double central_node_spacing(const std::vector<double>& intensity,
                                   const std::vector<double>& positions, double halfspan) {
    std::vector<double> nodes;
    for (std::size_t i = 1; i + 1 < intensity.size(); ++i) {
        if (std::fabs(positions[i]) > halfspan) continue;
        if (intensity[i] < intensity[i - 1] && intensity[i] < intensity[i + 1]) {
            const double ym = intensity[i - 1], y0 = intensity[i], yp = intensity[i + 1];
            const double denom = ym - 2.0 * y0 + yp;
            const double h = 0.5 * (positions[i + 1] - positions[i - 1]);
            nodes.push_back(positions[i] + (denom > 0.0 ? 0.5 * h * (ym - yp) / denom : 0.0));
        }
    }
    if (nodes.size() < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) sum += nodes[i + 1] - nodes[i];
    return sum / static_cast<double>(nodes.size() - 1);
}

}  // namespace oracles
