#include "fringekit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fringekit/fft.hpp"

namespace fringekit {

namespace {

using complexd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Interior local extrema with plateau handling: a run of equal values counts
// as one extremum (at its center) when both flanking values lie strictly on
// the same side. Boundary runs are never extrema.
struct Extremum {
    std::size_t index;
    double value;
    bool is_max;
};

std::vector<Extremum> local_extrema(const std::vector<double>& p) {
    std::vector<Extremum> out;
    const std::size_t n = p.size();
    if (n < 3) return out;
    std::size_t i = 1;
    while (i + 1 < n) {
        std::size_t j = i;
        while (j + 1 < n && p[j + 1] == p[i]) ++j;  // plateau [i, j]
        if (j + 1 == n) break;                      // runs into the right edge
        const double left = p[i - 1], right = p[j + 1], v = p[i];
        if (v > left && v > right) out.push_back({(i + j) / 2, v, true});
        else if (v < left && v < right) out.push_back({(i + j) / 2, v, false});
        i = j + 1;
    }
    return out;
}

// 4x4 linear solve, Gaussian elimination with partial pivoting.
bool solve4(double A[4][4], double b[4], double x[4]) {
    int perm[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(A[perm[r]][col]) > std::fabs(A[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double d = A[perm[col]][col];
        if (d == 0.0 || !std::isfinite(d)) return false;
        for (int r = col + 1; r < 4; ++r) {
            const double f = A[perm[r]][col] / d;
            for (int c = col; c < 4; ++c) A[perm[r]][c] -= f * A[perm[col]][c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    for (int col = 3; col >= 0; --col) {
        double s = b[perm[col]];
        for (int c = col + 1; c < 4; ++c) s -= A[perm[col]][c] * x[c];
        x[col] = s / A[perm[col]][col];
        if (!std::isfinite(x[col])) return false;
    }
    return true;
}

double wrap_phase_to_half_turn(double phi) {
    phi = std::fmod(phi, kPi);
    if (phi < 0.0) phi += kPi;
    if (phi >= kPi) phi -= kPi;
    return phi;
}

}  // namespace

std::vector<std::uint64_t> histogram(const std::vector<ClickEvent>& clicks, std::size_t n_bins) {
    if (n_bins < 1) throw std::invalid_argument("histogram: n_bins must be >= 1");
    std::vector<std::uint64_t> counts(n_bins, 0);
    for (const auto& c : clicks)
        if (c.bin < n_bins) ++counts[c.bin];
    return counts;
}

std::vector<ClickEvent> coincidence_filter(const std::vector<ClickEvent>& signal,
                                           const std::vector<ClickEvent>& idler,
                                           CoincidenceWindow window) {
    if (!(window.width > 0.0)) throw std::invalid_argument("coincidence window must be > 0");
    const double half = 0.5 * window.width;

    std::vector<std::size_t> sig_order(signal.size()), idl_order(idler.size());
    for (std::size_t i = 0; i < signal.size(); ++i) sig_order[i] = i;
    for (std::size_t i = 0; i < idler.size(); ++i) idl_order[i] = i;
    auto by_time = [](const std::vector<ClickEvent>& v) {
        return [&v](std::size_t a, std::size_t b) {
            return v[a].timestamp != v[b].timestamp ? v[a].timestamp < v[b].timestamp : a < b;
        };
    };
    std::sort(sig_order.begin(), sig_order.end(), by_time(signal));
    std::sort(idl_order.begin(), idl_order.end(), by_time(idler));

    struct Candidate {
        double dt;
        double ts, ti;
        std::size_t s, i;
    };
    std::vector<Candidate> candidates;
    std::size_t lo = 0;
    for (std::size_t so = 0; so < sig_order.size(); ++so) {
        const auto& s = signal[sig_order[so]];
        while (lo < idl_order.size() && idler[idl_order[lo]].timestamp < s.timestamp - half) ++lo;
        for (std::size_t io = lo; io < idl_order.size(); ++io) {
            const auto& idl = idler[idl_order[io]];
            if (idl.timestamp > s.timestamp + half) break;
            candidates.push_back({std::fabs(idl.timestamp - s.timestamp), s.timestamp,
                                  idl.timestamp, sig_order[so], idl_order[io]});
        }
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.dt != b.dt) return a.dt < b.dt;
        if (a.ts != b.ts) return a.ts < b.ts;
        if (a.ti != b.ti) return a.ti < b.ti;
        if (a.s != b.s) return a.s < b.s;
        return a.i < b.i;
    });

    std::vector<char> sig_used(signal.size(), 0), idl_used(idler.size(), 0);
    std::vector<std::size_t> matched;
    for (const auto& c : candidates) {
        if (sig_used[c.s] || idl_used[c.i]) continue;
        sig_used[c.s] = 1;
        idl_used[c.i] = 1;
        matched.push_back(c.s);
    }
    std::sort(matched.begin(), matched.end());

    std::vector<ClickEvent> out;
    out.reserve(matched.size());
    for (std::size_t s : matched) out.push_back(signal[s]);
    std::stable_sort(out.begin(), out.end(),
                     [](const ClickEvent& a, const ClickEvent& b) { return a.timestamp < b.timestamp; });
    return out;
}

double visibility(const std::vector<double>& profile, const VisibilityOptions& opts) {
    const auto extrema = local_extrema(profile);
    if (extrema.empty()) return 0.0;

    double global_max = 0.0;
    for (double v : profile) global_max = std::max(global_max, v);
    if (global_max <= 0.0) return 0.0;
    const double cut = opts.envelope_fraction * global_max;

    // Region spanned by the outermost fringe peaks still above the envelope cut.
    std::size_t first = profile.size(), last = 0;
    for (const auto& e : extrema) {
        if (e.is_max && e.value >= cut) {
            first = std::min(first, e.index);
            last = std::max(last, e.index);
        }
    }
    if (first >= last) return 0.0;

    double max_sum = 0.0, min_sum = 0.0;
    std::size_t n_max = 0, n_min = 0;
    for (const auto& e : extrema) {
        if (e.index < first || e.index > last) continue;
        if (e.is_max) {
            max_sum += e.value;
            ++n_max;
        } else {
            min_sum += e.value;
            ++n_min;
        }
    }
    if (n_max == 0 || n_min == 0) return 0.0;
    const double imax = max_sum / static_cast<double>(n_max);
    const double imin = min_sum / static_cast<double>(n_min);
    if (imax + imin <= 0.0) return 0.0;
    return std::clamp((imax - imin) / (imax + imin), 0.0, 1.0);
}

FringeFit fit_fringe(const std::vector<double>& counts, const std::vector<double>& positions,
                     const FitOptions& opts) {
    const std::size_t n = counts.size();
    if (n != positions.size()) throw std::invalid_argument("fit_fringe: size mismatch");
    if (n < 16) throw std::invalid_argument("fit_fringe: too few samples");
    for (double c : counts)
        if (c < 0.0 || !std::isfinite(c)) throw std::invalid_argument("fit_fringe: counts must be >= 0");

    const double dx = (positions.back() - positions.front()) / static_cast<double>(n - 1);
    if (!(dx > 0.0)) throw std::invalid_argument("fit_fringe: positions must be ascending");
    const double span = static_cast<double>(n) * dx;

    // --- deterministic initialization -------------------------------------
    double mean = 0.0, k0 = 0.0;
    for (double c : counts) {
        mean += c;
        k0 = std::max(k0, c);
    }
    mean /= static_cast<double>(n);
    if (k0 <= 0.0) throw std::invalid_argument("fit_fringe: all-zero profile");

    // b from the dominant nonzero spatial frequency of the profile. The
    // envelope occupies the first few DFT bins; with the >= 8 period
    // precondition the fringe line sits at m >= 8, so the search starts at 4.
    std::vector<complexd> spec(n);
    for (std::size_t i = 0; i < n; ++i) spec[i] = counts[i] - mean;
    detail::fft_in_place(spec, true);
    std::vector<double> mags(n / 2 + 1, 0.0);
    for (std::size_t m = 0; m <= n / 2; ++m) mags[m] = std::abs(spec[m]);
    std::size_t m_peak = 4;
    double best_mag = -1.0;
    for (std::size_t m = 4; m <= n / 2; ++m) {
        if (mags[m] > best_mag) {
            best_mag = mags[m];
            m_peak = m;
        }
    }
    double m_ref = static_cast<double>(m_peak);
    if (m_peak > 4 && m_peak < n / 2) {
        const double ym = mags[m_peak - 1], y0 = mags[m_peak], yp = mags[m_peak + 1];
        const double denom = ym - 2.0 * y0 + yp;
        if (denom != 0.0) m_ref += 0.5 * (ym - yp) / denom;
    }
    double b = kPi * m_ref / span;  // intensity oscillates at spatial frequency 2b

    if (span * b / kPi < 8.0)
        throw std::invalid_argument("fit_fringe: fewer than 8 fringe periods sampled");

    // a and k from the log-envelope of the fringe peaks
    double a = 0.0;
    {
        const auto extrema = local_extrema(counts);
        double sxx = 0.0, sx = 0.0, sy = 0.0, sxy = 0.0, cnt = 0.0;
        for (const auto& e : extrema) {
            if (!e.is_max || e.value < 0.05 * k0) continue;
            const double x2 = positions[e.index] * positions[e.index];
            const double ly = std::log(e.value);
            sx += x2;
            sxx += x2 * x2;
            sy += ly;
            sxy += x2 * ly;
            cnt += 1.0;
        }
        const double det = cnt * sxx - sx * sx;
        if (cnt >= 3.0 && det > 0.0) {
            a = -(cnt * sxy - sx * sy) / det;
            const double lk = (sy * sxx - sx * sxy) / det;
            if (std::isfinite(lk)) k0 = std::exp(lk);
        }
        if (!(a > 0.0) || !std::isfinite(a)) {
            double swx2 = 0.0, sw = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                swx2 += counts[i] * positions[i] * positions[i];
                sw += counts[i];
            }
            a = (sw > 0.0 && swx2 > 0.0) ? 0.5 * sw / swx2 : 1.0 / (span * span);
        }
    }

    // phi by quadrature projection at the estimated fringe frequency
    double phi = 0.0;
    {
        complexd p(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            p += (counts[i] - mean) * std::polar(1.0, -2.0 * b * positions[i]);
        phi = 0.5 * std::arg(p);
    }

    // --- damped least squares refinement -----------------------------------
    double param[4] = {k0, a, b, phi};
    auto cost_of = [&](const double q[4]) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = positions[i];
            const double env = q[0] * std::exp(-q[1] * x * x);
            const double osc = std::cos(q[2] * x + q[3]);
            const double r = env * osc * osc - counts[i];
            c += r * r;
        }
        return c;
    };

    double cost = cost_of(param);
    double lambda = 1e-3;
    bool converged = false;
    int iterations = 0;

    for (int it = 0; it < opts.max_iterations; ++it) {
        iterations = it + 1;
        double jtj[4][4] = {};
        double jtr[4] = {};
        for (std::size_t i = 0; i < n; ++i) {
            const double x = positions[i];
            const double e = std::exp(-param[1] * x * x);
            const double arg = param[2] * x + param[3];
            const double c = std::cos(arg), s = std::sin(arg);
            const double model = param[0] * e * c * c;
            const double r = model - counts[i];
            const double j0 = e * c * c;
            const double j1 = -x * x * model;
            const double j2 = -param[0] * e * 2.0 * c * s * x;
            const double j3 = -param[0] * e * 2.0 * c * s;
            const double jrow[4] = {j0, j1, j2, j3};
            for (int p = 0; p < 4; ++p) {
                jtr[p] += jrow[p] * r;
                for (int q = p; q < 4; ++q) jtj[p][q] += jrow[p] * jrow[q];
            }
        }
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < p; ++q) jtj[p][q] = jtj[q][p];

        bool accepted = false;
        for (int attempt = 0; attempt < 16 && !accepted; ++attempt) {
            double A[4][4];
            double rhs[4], step[4];
            for (int p = 0; p < 4; ++p) {
                for (int q = 0; q < 4; ++q) A[p][q] = jtj[p][q];
                A[p][p] += lambda * (jtj[p][p] > 0.0 ? jtj[p][p] : 1.0);
                rhs[p] = -jtr[p];
            }
            if (!solve4(A, rhs, step)) {
                lambda *= 4.0;
                continue;
            }
            double trial[4];
            for (int p = 0; p < 4; ++p) trial[p] = param[p] + step[p];
            if (!(trial[0] > 0.0) || !(trial[1] > 0.0)) {
                lambda *= 4.0;
                continue;
            }
            const double trial_cost = cost_of(trial);
            if (std::isfinite(trial_cost) && trial_cost <= cost) {
                const double improvement = cost - trial_cost;
                double max_rel_step = 0.0;
                for (int p = 0; p < 4; ++p) {
                    const double scale = std::fabs(param[p]) + 1e-300;
                    max_rel_step = std::max(max_rel_step, std::fabs(step[p]) / scale);
                }
                for (int p = 0; p < 4; ++p) param[p] = trial[p];
                const double prev = cost;
                cost = trial_cost;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                if (improvement <= opts.cost_tolerance * (prev + 1e-300) ||
                    max_rel_step <= opts.step_tolerance) {
                    converged = true;
                }
            } else {
                lambda *= 4.0;
            }
        }
        if (converged) break;
        if (!accepted) {
            converged = true;  // stuck at a (possibly local) minimum
            break;
        }
    }

    FringeFit fit;
    if (param[2] < 0.0) {
        param[2] = -param[2];
        param[3] = -param[3];
    }
    fit.k = param[0];
    fit.a = param[1];
    fit.b = param[2];
    fit.phi = wrap_phase_to_half_turn(param[3]);
    fit.rms_residual = std::sqrt(cost / static_cast<double>(n)) / fit.k;
    fit.iterations = iterations;
    fit.converged = converged && fit.k > 0.0 && fit.a > 0.0 && fit.b > 0.0;
    return fit;
}

std::vector<double> find_nodes(const std::vector<double>& profile,
                               const std::vector<double>& positions,
                               const NodeFindOptions& opts) {
    if (profile.size() != positions.size())
        throw std::invalid_argument("find_nodes: size mismatch");
    double global_max = 0.0;
    for (double v : profile) global_max = std::max(global_max, v);
    if (global_max <= 0.0) return {};
    const double cut = opts.threshold_fraction * global_max;

    std::vector<double> nodes;
    for (const auto& e : local_extrema(profile)) {
        if (e.is_max || e.value > cut) continue;
        const std::size_t i = e.index;
        double x = positions[i];
        if (i > 0 && i + 1 < profile.size()) {
            const double ym = profile[i - 1], y0 = profile[i], yp = profile[i + 1];
            const double denom = ym - 2.0 * y0 + yp;
            if (denom > 0.0) {
                const double h = 0.5 * (positions[i + 1] - positions[i - 1]);
                x += 0.5 * h * (ym - yp) / denom;
            }
        }
        nodes.push_back(x);
    }
    std::sort(nodes.begin(), nodes.end());
    return nodes;
}

}  // namespace fringekit
