#include "fringekit/wavefield.hpp"

#include <fftw3.h>

#include "fringekit/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace fringekit {

namespace {

constexpr double kPi = std::numbers::pi;

// Cached FFTW plans per transform size. Plans are created with FFTW_ESTIMATE
// (heuristic, no runtime measurement) so planning is deterministic for a
// given build, and executed via the new-array interface.
class FftEngine {
  public:
    static FftEngine& instance() {
        static FftEngine e;
        return e;
    }

    void forward(std::vector<complexd>& data) { run(data, FFTW_FORWARD); }
    void inverse(std::vector<complexd>& data) { run(data, FFTW_BACKWARD); }

  private:
    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    void run(std::vector<complexd>& data, int sign) {
        const int n = static_cast<int>(data.size());
        std::lock_guard<std::mutex> lock(mutex_);
        Plans& p = plans_[n];
        if (!p.fwd) {
            std::vector<complexd> scratch(n);
            auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
            p.fwd = fftw_plan_dft_1d(n, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
            p.bwd = fftw_plan_dft_1d(n, ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        auto* d = reinterpret_cast<fftw_complex*>(data.data());
        fftw_execute_dft(sign == FFTW_FORWARD ? p.fwd : p.bwd, d, d);
    }

    std::mutex mutex_;
    std::map<int, Plans> plans_;
};

}  // namespace

namespace detail {
void fft_in_place(std::vector<std::complex<double>>& data, bool forward) {
    if (forward)
        FftEngine::instance().forward(data);
    else
        FftEngine::instance().inverse(data);
}
}  // namespace detail

GridSpec GridSpec::centered(std::size_t n, double extent) {
    GridSpec g;
    g.n = n;
    g.pitch = extent / static_cast<double>(n);
    g.origin_offset = -0.5 * extent;
    return g;
}

ScalarField::ScalarField(GridSpec grid, double wavelength)
    : ScalarField(grid, wavelength, std::vector<complexd>(grid.n)) {}

ScalarField::ScalarField(GridSpec grid, double wavelength, std::vector<complexd> samples)
    : grid_(grid), wavelength_(wavelength), samples_(std::move(samples)) {
    if (grid_.n < 2) throw GeometryError("ScalarField: need at least 2 samples");
    if (!(grid_.pitch > 0.0)) throw GeometryError("ScalarField: pitch must be > 0");
    if (!(wavelength_ > 0.0)) throw GeometryError("ScalarField: wavelength must be > 0");
    if (samples_.size() != grid_.n)
        throw GridMismatchError("ScalarField: sample count does not match grid");
}

double ScalarField::total_power() const {
    double p = 0.0;
    for (const auto& s : samples_) p += std::norm(s);
    return p * grid_.pitch;
}

std::vector<double> ScalarField::intensity() const {
    std::vector<double> out(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) out[i] = std::norm(samples_[i]);
    return out;
}

std::vector<double> ScalarField::positions() const {
    std::vector<double> out(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) out[i] = position(i);
    return out;
}

ScalarField& ScalarField::operator*=(complexd s) {
    for (auto& v : samples_) v *= s;
    return *this;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    if (grid_ != other.grid_ || wavelength_ != other.wavelength_)
        throw GridMismatchError("ScalarField += : grids differ");
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += other.samples_[i];
    return *this;
}

VectorField::VectorField(ScalarField h_, ScalarField v_) : h(std::move(h_)), v(std::move(v_)) {
    if (h.grid() != v.grid() || h.wavelength() != v.wavelength())
        throw GridMismatchError("VectorField: h and v must share grid and wavelength");
}

ApertureMask make_two_slit_mask(const GridSpec& grid, double slit_width, double slit_separation) {
    if (!(slit_width > 0.0)) throw GeometryError("two_slit_mask: slit_width must be > 0");
    if (!(slit_separation > slit_width))
        throw GeometryError("two_slit_mask: slit_separation must exceed slit_width");
    const double outer = 0.5 * slit_separation + 0.5 * slit_width;
    const double lo = grid.position(0);
    const double hi = grid.position(grid.n - 1);
    if (-outer < lo || outer > hi)
        throw GeometryError("two_slit_mask: slits do not fit in the grid extent");

    ApertureMask m;
    m.grid = grid;
    m.transmission.assign(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.position(i);
        const bool in_a = std::fabs(x + 0.5 * slit_separation) <= 0.5 * slit_width;
        const bool in_b = std::fabs(x - 0.5 * slit_separation) <= 0.5 * slit_width;
        if (in_a || in_b) m.transmission[i] = 1.0;
    }
    return m;
}

ApertureMask make_wire_grid_mask(const GridSpec& grid, const std::vector<double>& wire_centers,
                                 double wire_width) {
    if (!(wire_width > 0.0)) throw GeometryError("wire_grid_mask: wire_width must be > 0");
    ApertureMask m;
    m.grid = grid;
    m.transmission.assign(grid.n, 1.0);
    for (double c : wire_centers) {
        auto first = static_cast<long>(std::ceil((c - 0.5 * wire_width - grid.origin_offset) / grid.pitch));
        auto last = static_cast<long>(std::floor((c + 0.5 * wire_width - grid.origin_offset) / grid.pitch));
        first = std::max<long>(first, 0);
        last = std::min<long>(last, static_cast<long>(grid.n) - 1);
        for (long i = first; i <= last; ++i) m.transmission[static_cast<std::size_t>(i)] = 0.0;
    }
    return m;
}

ScalarField apply_mask(const ScalarField& f, const ApertureMask& m) {
    if (m.grid != f.grid()) throw GridMismatchError("apply_mask: mask grid does not match field");
    if (m.transmission.size() != f.size())
        throw GridMismatchError("apply_mask: mask length does not match field");
    std::vector<complexd> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double t = m.transmission[i];
        if (t < 0.0 || t > 1.0)
            throw GeometryError("apply_mask: transmission entries must lie in [0,1]");
        out[i] = f[i] * t;
    }
    return ScalarField(f.grid(), f.wavelength(), std::move(out));
}

ScalarField propagate(const ScalarField& f, double distance, const PropagationOptions& opts) {
    if (!(distance >= 0.0) || !std::isfinite(distance))
        throw GeometryError("propagate: distance must be finite and >= 0");

    const std::size_t n = f.size();
    const double pitch = f.pitch();
    const double lambda = f.wavelength();
    const double extent = f.grid().extent();
    const double du = 1.0 / (static_cast<double>(n) * pitch);

    std::vector<complexd> spec = f.samples();
    FftEngine::instance().forward(spec);

    // Alias-safe bandwidth: modes steeper than this walk farther than half the
    // (periodic) grid extent over `distance` and would wrap around.
    const double frac = 2.0 * distance / extent;
    const double u_limit = 1.0 / (lambda * std::sqrt(1.0 + frac * frac));

    double total = 0.0, clipped = 0.0;
    for (const auto& s : spec) total += std::norm(s);

    const double inv_lambda2 = 1.0 / (lambda * lambda);
    std::vector<complexd> kernel(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double idx = (k <= n / 2) ? static_cast<double>(k)
                                        : static_cast<double>(k) - static_cast<double>(n);
        const double u = idx * du;
        if (std::fabs(u) > u_limit) {
            clipped += std::norm(spec[k]);
            kernel[k] = 0.0;
        } else {
            const double kz = 2.0 * kPi * std::sqrt(inv_lambda2 - u * u);
            kernel[k] = std::polar(1.0, kz * distance);
        }
    }

    if (total > 0.0 && clipped / total > opts.band_loss_tolerance) {
        std::ostringstream msg;
        msg << "propagate: sampling violation, " << clipped / total
            << " of the field power lies outside the alias-safe band |u| <= " << u_limit
            << " for distance " << distance << " m (tolerance " << opts.band_loss_tolerance
            << "); use a finer pitch, larger extent, or a relaxed tolerance";
        throw SamplingViolationError(msg.str());
    }

    for (std::size_t k = 0; k < n; ++k) spec[k] *= kernel[k];
    FftEngine::instance().inverse(spec);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& s : spec) s *= scale;
    return ScalarField(f.grid(), lambda, std::move(spec));
}

ScalarField apply_thin_lens(const ScalarField& f, double focal_length) {
    if (focal_length == 0.0 || std::isnan(focal_length))
        throw GeometryError("thin_lens: focal length must be nonzero");
    std::vector<complexd> out(f.size());
    const double c = -kPi / (f.wavelength() * focal_length);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.position(i);
        out[i] = f[i] * std::polar(1.0, c * x * x);
    }
    return ScalarField(f.grid(), f.wavelength(), std::move(out));
}

std::vector<double> intensity_profile(const VectorField& f) {
    std::vector<double> out(f.h.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::norm(f.h[i]) + std::norm(f.v[i]);
    return out;
}

ScalarField gaussian_beam(const GridSpec& grid, double wavelength, double center, double waist,
                          complexd amplitude) {
    if (!(waist > 0.0)) throw GeometryError("gaussian_beam: waist must be > 0");
    std::vector<complexd> s(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double t = (grid.position(i) - center) / waist;
        s[i] = amplitude * std::exp(-t * t);
    }
    return ScalarField(grid, wavelength, std::move(s));
}

ScalarField linear_combination(complexd a, const ScalarField& f, complexd b, const ScalarField& g) {
    if (f.grid() != g.grid() || f.wavelength() != g.wavelength())
        throw GridMismatchError("linear_combination: grids differ");
    std::vector<complexd> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = a * f[i] + b * g[i];
    return ScalarField(f.grid(), f.wavelength(), std::move(out));
}

}  // namespace fringekit
