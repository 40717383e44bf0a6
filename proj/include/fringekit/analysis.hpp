#pragma once

#include <cstddef>
#include <vector>

#include "fringekit/detection.hpp"

namespace fringekit {

/// Parameters of the fringe model k * exp(-a x^2) * cos^2(b x + phi).
struct FringeFit {
    double k = 0.0;             // amplitude, counts or intensity units
    double a = 0.0;             // 1/m^2 envelope decay
    double b = 0.0;             // rad/m fringe frequency
    double phi = 0.0;           // intensity phase, canonicalized to [0, pi)
    double rms_residual = 0.0;  // rms(model - data) / k
    bool converged = false;
    int iterations = 0;
};

struct CoincidenceWindow {
    double width = 5e-9;  // seconds; partners must satisfy |dt| <= width/2
};

/// Count clicks per bin index; out-of-range clicks are dropped.
std::vector<std::uint64_t> histogram(const std::vector<ClickEvent>& clicks, std::size_t n_bins);

/// Signal clicks that have a time-matched idler partner. Candidate pairs are
/// taken greedily by increasing |dt| (ties: earlier signal, then earlier
/// idler) and each click matches at most once, mirroring hardware
/// coincidence logic. Output preserves signal time order.
std::vector<ClickEvent> coincidence_filter(const std::vector<ClickEvent>& signal,
                                           const std::vector<ClickEvent>& idler,
                                           CoincidenceWindow window);

struct VisibilityOptions {
    /// A fringe peak participates when it reaches this fraction of the global
    /// maximum; the analysed region spans the outermost such peaks.
    double envelope_fraction = 0.5;
};

/// (Imax - Imin) / (Imax + Imin) over the central-fringe region, where Imax
/// and Imin are the means of the interior local maxima/minima. A profile with
/// no alternating interior extrema (flat or single-peaked) has visibility 0.
double visibility(const std::vector<double>& profile, const VisibilityOptions& opts = {});

struct FitOptions {
    int max_iterations = 200;
    double cost_tolerance = 1e-14;
    double step_tolerance = 1e-13;
};

/// Nonlinear least squares of k exp(-a x^2) cos^2(b x + phi) against
/// (positions, counts). Deterministic: initialized from the data (k from the
/// peak, b from the dominant nonzero spatial frequency, a from the fringe-peak
/// log-envelope, phi by quadrature projection) and refined by damped
/// Gauss-Newton with a fixed schedule. Returns best-so-far with
/// converged=false when the iteration cap is hit or parameters leave their
/// valid ranges.
FringeFit fit_fringe(const std::vector<double>& counts, const std::vector<double>& positions,
                     const FitOptions& opts = {});

struct NodeFindOptions {
    /// A local minimum counts as a node when below this fraction of the
    /// global maximum.
    double threshold_fraction = 0.05;
};

/// Positions of intensity nodes (deep local minima), refined by quadratic
/// interpolation of the three samples around each minimum; sorted ascending.
std::vector<double> find_nodes(const std::vector<double>& profile,
                               const std::vector<double>& positions,
                               const NodeFindOptions& opts = {});

}  // namespace fringekit
