#include "fringekit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fringekit/errors.hpp"
#include "fringekit/rng.hpp"
#include "fringekit/textio.hpp"
#include "fringekit/wavefield.hpp"

namespace fringekit {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what) {
    if (!ok) throw GeometryError(what);
}

void validate_slits(double wavelength, double width, double separation, double waist) {
    require(wavelength > 0.0, "wavelength must be > 0");
    require(width > 0.0, "slit_width must be > 0");
    require(separation > width, "slit_separation must exceed slit_width");
    require(waist > 0.0, "beam_waist must be > 0");
    require(waist <= 0.5 * width,
            "beam_waist must not exceed half the slit_width (the apodized slit profile has to fit "
            "inside the slit)");
}

void validate_grid(const SimGrid& g) {
    require(g.samples >= 64, "sim grid needs at least 64 samples");
    require(g.extent > 0.0, "sim extent must be > 0");
}

// --- screen-side machinery shared by the eraser and delayed-choice runs ----

enum class Channel { H, V };

struct ScreenModel {
    std::vector<double> bin_centers;
    std::vector<double> rate_h, rate_v, rate_total;  // power per detector bin
    std::vector<double> cum_total;                   // running sum of rate_total
    double halfspan = 0.0;
    double bin_width = 0.0;
    double total_beam_power = 0.0;  // both components, full grid
    double in_span_power = 0.0;
    double share_v = 0.5;  // overall vertical-channel share inside the span
};

ScreenModel build_screen_model(const EraserConfig& cfg) {
    const GridSpec grid = GridSpec::centered(cfg.grid.samples, cfg.grid.extent);
    const double d = cfg.slit_separation;

    const ScalarField slit_a = gaussian_beam(grid, cfg.wavelength, -0.5 * d, cfg.beam_waist);
    const ScalarField slit_b = gaussian_beam(grid, cfg.wavelength, +0.5 * d, cfg.beam_waist);
    const ScalarField far_a = propagate(slit_a, cfg.screen_distance);
    const ScalarField far_b = propagate(slit_b, cfg.screen_distance);

    const JonesVector mother = JonesVector::vertical();
    const JonesVector tag_a = apply_polarizer(mother, PolarizerAngle(cfg.slit_polarizer_a));
    const JonesVector tag_b = apply_polarizer(mother, PolarizerAngle(cfg.slit_polarizer_b));

    const ScalarField field_h = linear_combination(tag_a.e_h, far_a, tag_b.e_h, far_b);
    const ScalarField field_v = linear_combination(tag_a.e_v, far_a, tag_b.e_v, far_b);

    ScreenModel m;
    m.halfspan = cfg.resolved_halfspan();
    require(m.halfspan > 0.0 && m.halfspan <= 0.45 * cfg.grid.extent,
            "detector_halfspan must be positive and fit inside the simulation grid");
    const std::size_t nb = cfg.detector_bins;
    m.bin_width = 2.0 * m.halfspan / static_cast<double>(nb);
    m.bin_centers.resize(nb);
    for (std::size_t i = 0; i < nb; ++i)
        m.bin_centers[i] = -m.halfspan + (static_cast<double>(i) + 0.5) * m.bin_width;

    m.rate_h.assign(nb, 0.0);
    m.rate_v.assign(nb, 0.0);
    const double pitch = grid.pitch;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double ih = std::norm(field_h[i]) * pitch;
        const double iv = std::norm(field_v[i]) * pitch;
        m.total_beam_power += ih + iv;
        const double x = grid.position(i);
        if (x < -m.halfspan || x >= m.halfspan) continue;
        const auto bin = static_cast<std::size_t>((x + m.halfspan) / m.bin_width);
        if (bin >= nb) continue;
        m.rate_h[bin] += ih;
        m.rate_v[bin] += iv;
    }

    m.rate_total.resize(nb);
    m.cum_total.resize(nb);
    double cum = 0.0, pv = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
        m.rate_total[i] = m.rate_h[i] + m.rate_v[i];
        cum += m.rate_total[i];
        pv += m.rate_v[i];
        m.cum_total[i] = cum;
    }
    m.in_span_power = cum;
    m.share_v = (cum > 0.0) ? pv / cum : 0.5;
    return m;
}

struct SignalEvent {
    bool clicked = false;
    std::uint32_t bin = 0;
    Channel channel = Channel::V;
    double timestamp = 0.0;
};

// One potential signal click per pulse; the pulse energy that reaches the
// detector span sets the click probability, the per-bin power sets the
// position, and the local daughter intensities set the channel. Exactly two
// rng draws per pulse so streams stay aligned across configurations.
SignalEvent sample_signal_event(const ScreenModel& m, const EraserConfig& cfg, double timestamp,
                                std::mt19937_64& rng) {
    const double u_pos = uniform01(rng);
    const double u_chan = uniform01(rng);

    SignalEvent ev;
    ev.timestamp = timestamp + cfg.signal_path_delay;
    const double p_click = cfg.detector_efficiency * m.in_span_power / m.total_beam_power;
    if (u_pos >= p_click) {
        ev.channel = (u_chan < m.share_v) ? Channel::V : Channel::H;
        return ev;
    }
    const double target = u_pos / cfg.detector_efficiency * m.total_beam_power;
    const auto it = std::upper_bound(m.cum_total.begin(), m.cum_total.end(), target);
    const auto bin = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - m.cum_total.begin(),
                                 static_cast<std::ptrdiff_t>(m.cum_total.size()) - 1));
    const double pv = (m.rate_total[bin] > 0.0) ? m.rate_v[bin] / m.rate_total[bin] : 0.5;
    ev.clicked = true;
    ev.bin = static_cast<std::uint32_t>(bin);
    ev.channel = (u_chan < pv) ? Channel::V : Channel::H;
    return ev;
}

/// Whether an idler analyzer at `setting` passes the partner of a signal
/// event in `channel`. Type-I pairs pass the matching channel (vertical
/// analyzer selects the fringe daughter), Type-II the orthogonal one.
bool idler_passes(IdlerPolarizer setting, Channel channel, PdcType type) {
    if (setting == IdlerPolarizer::Absent) return true;
    const bool wants_v = (setting == IdlerPolarizer::Vertical);
    const bool is_v = (channel == Channel::V);
    return (type == PdcType::TypeI) ? (wants_v == is_v) : (wants_v != is_v);
}

std::vector<ClickEvent> make_dark_clicks(const EraserConfig& cfg, double exposure,
                                         std::uint32_t detector_id, std::mt19937_64& rng) {
    std::vector<ClickEvent> out;
    if (cfg.dark_rate <= 0.0) return out;
    const double mu = cfg.dark_rate * exposure;
    std::poisson_distribution<std::uint64_t> poisson(mu);
    for (std::uint32_t bin = 0; bin < cfg.detector_bins; ++bin) {
        const std::uint64_t k = poisson(rng);
        for (std::uint64_t j = 0; j < k; ++j)
            out.push_back({detector_id, bin, uniform01(rng) * exposure});
    }
    return out;
}

LabeledHistogram to_histogram(const std::vector<std::uint64_t>& counts,
                              const std::vector<double>& centers) {
    LabeledHistogram h;
    h.bin_centers = centers;
    h.counts.assign(counts.begin(), counts.end());
    return h;
}

void push_scalar(ExperimentResult& r, std::string name, double v) {
    r.scalars.emplace_back(std::move(name), v);
}

// Windowed power of a sampled intensity profile around the two slit-image
// positions.
double window_power(const std::vector<double>& intensity, const GridSpec& grid, double xa,
                    double xb, double halfwidth) {
    double p = 0.0;
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        const double x = grid.position(i);
        if (std::fabs(x - xa) <= halfwidth || std::fabs(x - xb) <= halfwidth)
            p += intensity[i] * grid.pitch;
    }
    return p;
}

}  // namespace

// --- config validation ------------------------------------------------------

double EraserConfig::resolved_halfspan() const {
    if (detector_halfspan > 0.0) return detector_halfspan;
    return wavelength * screen_distance / (kPi * beam_waist);
}

void EraserConfig::validate() const {
    validate_slits(wavelength, slit_width, slit_separation, beam_waist);
    validate_grid(grid);
    require(screen_distance > 0.0, "screen_distance must be > 0");
    require(std::isfinite(slit_polarizer_a) && std::isfinite(slit_polarizer_b),
            "slit polarizer angles must be finite");
    require(n_pairs >= 1, "n_pairs must be >= 1");
    require(mean_rate > 0.0, "mean_rate must be > 0");
    require(pairing_efficiency >= 0.0 && pairing_efficiency <= 1.0,
            "pairing_efficiency must lie in [0,1]");
    require(detector_bins >= 8, "detector_bins must be >= 8");
    require(detector_efficiency >= 0.0 && detector_efficiency <= 1.0,
            "detector_efficiency must lie in [0,1]");
    require(idler_efficiency >= 0.0 && idler_efficiency <= 1.0,
            "idler_efficiency must lie in [0,1]");
    require(dark_rate >= 0.0, "dark_rate must be >= 0");
    require(detector_halfspan >= 0.0, "detector_halfspan must be >= 0");
    require(coincidence_window > 0.0, "coincidence_window must be > 0");
    require(signal_path_delay >= 0.0, "signal_path_delay must be >= 0");
}

void DelayedChoiceConfig::validate() const {
    base.validate();
    require(splitter_transmittance >= 0.0 && splitter_transmittance <= 1.0,
            "splitter_transmittance must lie in [0,1]");
}

double AfsharConfig::magnification() const {
    return -dist_lens_image / (dist_slits_grid + dist_grid_lens);
}

void AfsharConfig::validate() const {
    validate_slits(wavelength, slit_width, slit_separation, beam_waist);
    validate_grid(grid);
    require(dist_slits_grid > 0.0, "dist_slits_grid must be > 0");
    require(dist_grid_lens > 0.0, "dist_grid_lens must be > 0");
    require(dist_lens_image > 0.0, "dist_lens_image must be > 0");
    require(focal_length != 0.0 && std::isfinite(focal_length), "focal_length must be nonzero");
    require(imaging_tolerance > 0.0, "imaging_tolerance must be > 0");
    require(wire_width >= 0.0, "wire_width must be >= 0");
    require(wire_count >= 2, "wire_count must be >= 2");
    require(node_threshold > 0.0 && node_threshold < 1.0, "node_threshold must lie in (0,1)");
    require(band_loss_tolerance > 0.0 && band_loss_tolerance <= 1.0,
            "band_tolerance must lie in (0,1]");
    const double s = dist_slits_grid + dist_grid_lens;
    const double lhs = 1.0 / s + 1.0 / dist_lens_image;
    const double rhs = 1.0 / focal_length;
    if (std::fabs(lhs - rhs) > imaging_tolerance * std::fabs(rhs))
        throw GeometryError(
            "imaging condition violated: 1/(slits-lens) + 1/(lens-image) != 1/focal_length "
            "within imaging_tolerance");
}

// --- result access ----------------------------------------------------------

const LabeledHistogram* ExperimentResult::histogram(std::string_view label) const {
    for (const auto& [name, h] : histograms)
        if (name == label) return &h;
    return nullptr;
}

const FringeFit* ExperimentResult::fit(std::string_view label) const {
    for (const auto& [name, f] : fits)
        if (name == label) return &f;
    return nullptr;
}

std::optional<double> ExperimentResult::scalar(std::string_view label) const {
    for (const auto& [name, v] : scalars)
        if (name == label) return v;
    return std::nullopt;
}

// --- eraser -----------------------------------------------------------------

ExperimentResult run_eraser(const EraserConfig& cfg) {
    cfg.validate();
    const ScreenModel screen = build_screen_model(cfg);

    const auto pairs = generate_pdc_pairs(cfg.n_pairs, cfg.pdc_type, cfg.mean_rate, cfg.seed);
    auto rng_signal = derive_rng(cfg.seed, "experiments.signal");
    auto rng_idler = derive_rng(cfg.seed, "experiments.idler");

    std::vector<ClickEvent> signal_clicks;
    std::vector<ClickEvent> idler_clicks;
    std::vector<ClickEvent> paired_clicks;  // signal clicks whose partner is detectable
    std::vector<ClickEvent> channel_v_clicks;
    signal_clicks.reserve(pairs.size());

    for (const auto& pair : pairs) {
        const SignalEvent ev = sample_signal_event(screen, cfg, pair.timestamp, rng_signal);
        const double u_pair = uniform01(rng_idler);
        const double u_eff = uniform01(rng_idler);
        const double u_resp = uniform01(rng_idler);
        (void)u_resp;  // the H/V analyzers are ideal; kept for stream stability

        const bool partner_exists = u_pair < cfg.pairing_efficiency;
        const bool partner_detectable = partner_exists && (u_eff < cfg.idler_efficiency);
        const bool idler_clicked =
            partner_detectable && idler_passes(cfg.idler_polarizer, ev.channel, cfg.pdc_type);

        if (idler_clicked) idler_clicks.push_back({1, 0, pair.timestamp});
        if (ev.clicked) {
            const ClickEvent c{0, ev.bin, ev.timestamp};
            signal_clicks.push_back(c);
            if (partner_detectable) paired_clicks.push_back(c);
            if (ev.channel == Channel::V) channel_v_clicks.push_back(c);
        }
    }

    const double duration =
        (pairs.empty() ? 0.0 : pairs.back().timestamp) + 1.0 / cfg.mean_rate + cfg.signal_path_delay;
    auto rng_dark = derive_rng(cfg.seed, "experiments.dark");
    const auto dark = make_dark_clicks(cfg, duration, 0, rng_dark);
    signal_clicks.insert(signal_clicks.end(), dark.begin(), dark.end());

    const auto retained =
        coincidence_filter(signal_clicks, idler_clicks, CoincidenceWindow{cfg.coincidence_window});

    ExperimentResult r;
    r.kind = "eraser";
    r.version = std::string(kToolName) + " " + std::string(kVersion);
    r.seed = cfg.seed;
    r.config_echo = echo_config(cfg);

    const auto raw_hist = histogram(signal_clicks, cfg.detector_bins);
    const auto coinc_hist = histogram(retained, cfg.detector_bins);
    const auto paired_hist = histogram(paired_clicks, cfg.detector_bins);
    const auto channel_v_hist = histogram(channel_v_clicks, cfg.detector_bins);
    r.histograms.emplace_back("raw", to_histogram(raw_hist, screen.bin_centers));
    r.histograms.emplace_back("coincidence", to_histogram(coinc_hist, screen.bin_centers));
    r.histograms.emplace_back("paired", to_histogram(paired_hist, screen.bin_centers));
    r.histograms.emplace_back("channel_v", to_histogram(channel_v_hist, screen.bin_centers));

    const auto& raw_counts = r.histograms[0].second.counts;
    const auto& coinc_counts = r.histograms[1].second.counts;
    push_scalar(r, "visibility_raw", visibility(raw_counts));
    push_scalar(r, "visibility_coincidence", visibility(coinc_counts));
    push_scalar(r, "n_signal_clicks", static_cast<double>(signal_clicks.size()));
    push_scalar(r, "n_idler_clicks", static_cast<double>(idler_clicks.size()));
    push_scalar(r, "n_coincidences", static_cast<double>(retained.size()));
    push_scalar(r, "retained_fraction",
                signal_clicks.empty()
                    ? 0.0
                    : static_cast<double>(retained.size()) / static_cast<double>(signal_clicks.size()));
    push_scalar(r, "channel_v_share", screen.share_v);
    push_scalar(r, "duration_s", duration);

    if (cfg.idler_polarizer != IdlerPolarizer::Absent) {
        try {
            r.fits.emplace_back("coincidence",
                                fit_fringe(coinc_counts, screen.bin_centers));
        } catch (const std::invalid_argument&) {
            // too few counts or periods; leave the fit out
        }
    }
    return r;
}

// --- delayed choice ----------------------------------------------------------

ExperimentResult run_delayed_choice(const DelayedChoiceConfig& dc) {
    dc.validate();
    const EraserConfig& cfg = dc.base;
    const ScreenModel screen = build_screen_model(cfg);

    const auto pairs = generate_pdc_pairs(cfg.n_pairs, cfg.pdc_type, cfg.mean_rate, cfg.seed);
    auto rng_signal = derive_rng(cfg.seed, "experiments.signal");
    auto rng_idler = derive_rng(cfg.seed, "experiments.idler");
    auto rng_route = derive_rng(cfg.seed, "experiments.route");

    // Subensembles keyed by which idler detector fired. The eraser arm
    // analyzes in the mother (H/V) basis and resolves the daughters; the
    // which-path arm analyzes in the slit-tag (+-pi/4) basis, where either
    // outcome is equally likely for both daughters.
    std::vector<ClickEvent> sub_eraser_v, sub_eraser_h, sub_wp_plus, sub_wp_minus, sub_unpaired;
    std::vector<ClickEvent> all_clicks;

    for (const auto& pair : pairs) {
        const SignalEvent ev = sample_signal_event(screen, cfg, pair.timestamp, rng_signal);
        const double u_pair = uniform01(rng_idler);
        const double u_eff = uniform01(rng_idler);
        const double u_resp = uniform01(rng_idler);
        const RoutingDecision route = beam_splitter(dc.splitter_transmittance, rng_route);

        if (!ev.clicked) continue;
        const ClickEvent c{0, ev.bin, ev.timestamp};
        all_clicks.push_back(c);

        const bool partner_detectable =
            (u_pair < cfg.pairing_efficiency) && (u_eff < cfg.idler_efficiency);
        if (!partner_detectable) {
            sub_unpaired.push_back(c);
            continue;
        }
        if (route.port == Port::Transmitted) {
            const bool fires_v = (cfg.pdc_type == PdcType::TypeI) == (ev.channel == Channel::V);
            (fires_v ? sub_eraser_v : sub_eraser_h).push_back(c);
        } else {
            // +-pi/4 analysis of an H- or V-mode partner: Malus gives 1/2 each
            (u_resp < 0.5 ? sub_wp_plus : sub_wp_minus).push_back(c);
        }
    }

    ExperimentResult r;
    r.kind = "delayed_choice";
    r.version = std::string(kToolName) + " " + std::string(kVersion);
    r.seed = cfg.seed;
    r.config_echo = echo_config(dc);

    auto add_hist = [&](const char* name, const std::vector<ClickEvent>& clicks) {
        r.histograms.emplace_back(name,
                                  to_histogram(histogram(clicks, cfg.detector_bins), screen.bin_centers));
    };
    add_hist("raw", all_clicks);
    add_hist("eraser_v", sub_eraser_v);
    add_hist("eraser_h", sub_eraser_h);
    add_hist("whichpath_plus", sub_wp_plus);
    add_hist("whichpath_minus", sub_wp_minus);
    if (!sub_unpaired.empty()) add_hist("unpaired", sub_unpaired);

    for (const auto& [name, hist] : r.histograms) {
        if (name == "raw") continue;
        push_scalar(r, "visibility_" + name, visibility(hist.counts));
    }
    push_scalar(r, "visibility_raw", visibility(r.histograms[0].second.counts));
    push_scalar(r, "n_signal_clicks", static_cast<double>(all_clicks.size()));
    push_scalar(r, "n_eraser_v", static_cast<double>(sub_eraser_v.size()));
    push_scalar(r, "n_eraser_h", static_cast<double>(sub_eraser_h.size()));
    push_scalar(r, "n_whichpath_plus", static_cast<double>(sub_wp_plus.size()));
    push_scalar(r, "n_whichpath_minus", static_cast<double>(sub_wp_minus.size()));
    push_scalar(r, "n_unpaired", static_cast<double>(sub_unpaired.size()));

    for (const char* name : {"eraser_v", "eraser_h"}) {
        const auto* hist = r.histogram(name);
        try {
            r.fits.emplace_back(name, fit_fringe(hist->counts, hist->bin_centers));
        } catch (const std::invalid_argument&) {
        }
    }
    return r;
}

// --- Afshar -------------------------------------------------------------------

std::vector<double> afshar_node_positions(const AfsharConfig& cfg) {
    cfg.validate();
    const GridSpec grid = GridSpec::centered(cfg.grid.samples, cfg.grid.extent);
    const double d = cfg.slit_separation;
    const ScalarField slit_a = gaussian_beam(grid, cfg.wavelength, -0.5 * d, cfg.beam_waist);
    const ScalarField slit_b = gaussian_beam(grid, cfg.wavelength, +0.5 * d, cfg.beam_waist);
    const ScalarField both_at_grid =
        propagate(linear_combination(1.0, slit_a, 1.0, slit_b), cfg.dist_slits_grid,
                  PropagationOptions{cfg.band_loss_tolerance});
    return find_nodes(both_at_grid.intensity(), both_at_grid.positions(),
                      NodeFindOptions{cfg.node_threshold});
}

ExperimentResult run_afshar(const AfsharConfig& cfg) {
    cfg.validate();
    const GridSpec grid = GridSpec::centered(cfg.grid.samples, cfg.grid.extent);
    const PropagationOptions prop{cfg.band_loss_tolerance};
    const double d = cfg.slit_separation;

    const ScalarField slit_a = gaussian_beam(grid, cfg.wavelength, -0.5 * d, cfg.beam_waist);
    const ScalarField slit_b = gaussian_beam(grid, cfg.wavelength, +0.5 * d, cfg.beam_waist);
    const ScalarField both = linear_combination(1.0, slit_a, 1.0, slit_b);
    const ScalarField single = (cfg.slit_blocking == SlitBlocking::SlitA) ? slit_b : slit_a;

    const ScalarField both_at_grid = propagate(both, cfg.dist_slits_grid, prop);
    const ScalarField single_at_grid = propagate(single, cfg.dist_slits_grid, prop);

    // Wires go at the nodes of the open-slit interference pattern.
    const auto grid_profile = both_at_grid.intensity();
    const auto grid_positions = both_at_grid.positions();
    const auto all_nodes =
        find_nodes(grid_profile, grid_positions, NodeFindOptions{cfg.node_threshold});
    if (all_nodes.size() < cfg.wire_count)
        throw GeometryError("afshar: found fewer interference nodes than wire_count");
    std::vector<double> wires = all_nodes;
    std::sort(wires.begin(), wires.end(),
              [](double a, double b) { return std::fabs(a) < std::fabs(b); });
    wires.resize(cfg.wire_count);
    std::sort(wires.begin(), wires.end());

    std::vector<double> gaps(wires.size() - 1);
    for (std::size_t i = 0; i + 1 < wires.size(); ++i) gaps[i] = wires[i + 1] - wires[i];
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    const double node_spacing = gaps[gaps.size() / 2];
    const double wire_width = (cfg.wire_width > 0.0) ? cfg.wire_width : 0.1 * node_spacing;
    if (!(wire_width < node_spacing))
        throw GeometryError("afshar: wire_width must stay below the node spacing");
    const ApertureMask wire_mask = make_wire_grid_mask(grid, wires, wire_width);

    struct Case {
        double power_at_grid = 0.0;       // incident on the grid plane
        double absorbed_fraction = 0.0;   // removed right at the wires
        std::vector<double> image;        // image-plane intensity, full grid
    };
    auto run_case = [&](const ScalarField& at_grid, bool with_grid) {
        Case c;
        c.power_at_grid = at_grid.total_power();
        ScalarField f = with_grid ? apply_mask(at_grid, wire_mask) : at_grid;
        if (with_grid)
            c.absorbed_fraction = 1.0 - f.total_power() / c.power_at_grid;
        f = propagate(f, cfg.dist_grid_lens, prop);
        f = apply_thin_lens(f, cfg.focal_length);
        f = propagate(f, cfg.dist_lens_image, prop);
        c.image = f.intensity();
        return c;
    };

    const Case both_nogrid = run_case(both_at_grid, false);
    const Case both_grid = run_case(both_at_grid, cfg.grid_present);
    const Case single_nogrid = run_case(single_at_grid, false);
    const Case single_grid = run_case(single_at_grid, cfg.grid_present);

    // Slit-image windows at the conjugate positions.
    const double mag = cfg.magnification();
    const double xa_img = mag * (-0.5 * d);
    const double xb_img = mag * (+0.5 * d);
    const double window_halfwidth = 0.25 * std::fabs(mag) * d;

    auto delivered = [&](const Case& c) {
        return window_power(c.image, grid, xa_img, xb_img, window_halfwidth);
    };
    const double delivered_both_nogrid = delivered(both_nogrid);
    const double delivered_both_grid = delivered(both_grid);
    const double delivered_single_nogrid = delivered(single_nogrid);
    const double delivered_single_grid = delivered(single_grid);

    // Fraction of the useful beam the grid removes: absorbed at the wires plus
    // light diffracted out of the slit images.
    const double intercepted_both = 1.0 - delivered_both_grid / delivered_both_nogrid;
    const double intercepted_single = 1.0 - delivered_single_grid / delivered_single_nogrid;

    const double image_window = 6.0 * std::fabs(mag) * 0.5 * d;
    std::size_t img_lo = grid.n, img_hi = 0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        if (std::fabs(grid.position(i)) <= image_window) {
            img_lo = std::min(img_lo, i);
            img_hi = std::max(img_hi, i);
        }
    }
    auto windowed = [&](const std::vector<double>& v) {
        return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(img_lo),
                                   v.begin() + static_cast<std::ptrdiff_t>(img_hi) + 1);
    };
    std::vector<double> img_positions;
    for (std::size_t i = img_lo; i <= img_hi; ++i) img_positions.push_back(grid.position(i));

    auto ncc = [&](const std::vector<double>& with_grid, const std::vector<double>& reference) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = img_lo; i <= img_hi; ++i) {
            num += with_grid[i] * reference[i];
            den += reference[i] * reference[i];
        }
        return (den > 0.0) ? num / den : 0.0;
    };
    const double fidelity_both = ncc(both_grid.image, both_nogrid.image);
    const double fidelity_single = ncc(single_grid.image, single_nogrid.image);

    ExperimentResult r;
    r.kind = "afshar";
    r.version = std::string(kToolName) + " " + std::string(kVersion);
    r.seed = cfg.seed;
    r.config_echo = echo_config(cfg);

    // Store the grid-plane pattern around the wire region and the image-plane
    // profiles around the slit images.
    const double grid_window = wires.back() + 3.0 * node_spacing;
    std::vector<double> gp_pos, gp_both, gp_single;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.position(i);
        if (std::fabs(x) > grid_window) continue;
        gp_pos.push_back(x);
        gp_both.push_back(grid_profile[i]);
        gp_single.push_back(std::norm(single_at_grid[i]));
    }
    r.histograms.emplace_back("gridplane_both", LabeledHistogram{gp_pos, gp_both});
    r.histograms.emplace_back("gridplane_blocked", LabeledHistogram{gp_pos, gp_single});
    r.histograms.emplace_back("image_both_nogrid",
                              LabeledHistogram{img_positions, windowed(both_nogrid.image)});
    r.histograms.emplace_back("image_both_grid",
                              LabeledHistogram{img_positions, windowed(both_grid.image)});
    r.histograms.emplace_back("image_blocked_nogrid",
                              LabeledHistogram{img_positions, windowed(single_nogrid.image)});
    r.histograms.emplace_back("image_blocked_grid",
                              LabeledHistogram{img_positions, windowed(single_grid.image)});
    r.series.emplace_back("node_positions", all_nodes);
    r.series.emplace_back("wire_centers", wires);

    push_scalar(r, "power_intercepted_both_slits", intercepted_both);
    push_scalar(r, "power_intercepted_one_slit", intercepted_single);
    push_scalar(r, "fidelity_both_slits", fidelity_both);
    push_scalar(r, "fidelity_one_slit", fidelity_single);
    push_scalar(r, "grid_absorbed_both_slits", both_grid.absorbed_fraction);
    push_scalar(r, "grid_absorbed_one_slit", single_grid.absorbed_fraction);
    push_scalar(r, "node_spacing_m", node_spacing);
    push_scalar(r, "wire_width_m", wire_width);
    push_scalar(r, "magnification", mag);
    push_scalar(r, "image_window_halfwidth_m", window_halfwidth);
    push_scalar(r, "delivered_both_nogrid", delivered_both_nogrid);
    push_scalar(r, "delivered_both_grid", delivered_both_grid);
    push_scalar(r, "delivered_one_nogrid", delivered_single_nogrid);
    push_scalar(r, "delivered_one_grid", delivered_single_grid);
    push_scalar(r, "power_at_grid_both", both_nogrid.power_at_grid);
    push_scalar(r, "power_at_grid_one", single_nogrid.power_at_grid);
    return r;
}

// --- config echo --------------------------------------------------------------

namespace {

using KvList = std::vector<std::pair<std::string, std::string>>;

void echo_common_slits(KvList& kv, double wavelength, double width, double separation,
                       double waist) {
    kv.emplace_back("wavelength_nm", format_double(wavelength / 1e-9));
    kv.emplace_back("slit_width_um", format_double(width / 1e-6));
    kv.emplace_back("slit_separation_um", format_double(separation / 1e-6));
    kv.emplace_back("beam_waist_um", format_double(waist / 1e-6));
}

void echo_eraser_base(KvList& kv, const EraserConfig& c) {
    echo_common_slits(kv, c.wavelength, c.slit_width, c.slit_separation, c.beam_waist);
    kv.emplace_back("screen_distance_m", format_double(c.screen_distance));
    kv.emplace_back("slit_polarizer_a_deg", format_double(c.slit_polarizer_a / kDegree));
    kv.emplace_back("slit_polarizer_b_deg", format_double(c.slit_polarizer_b / kDegree));
    const char* idler = (c.idler_polarizer == IdlerPolarizer::Vertical)     ? "vertical"
                        : (c.idler_polarizer == IdlerPolarizer::Horizontal) ? "horizontal"
                                                                            : "absent";
    kv.emplace_back("idler_polarizer", idler);
    kv.emplace_back("pdc_type", c.pdc_type == PdcType::TypeI ? "type1" : "type2");
    kv.emplace_back("n_pairs", format_u64(c.n_pairs));
    kv.emplace_back("mean_rate_hz", format_double(c.mean_rate));
    kv.emplace_back("pairing_efficiency", format_double(c.pairing_efficiency));
    kv.emplace_back("detector_bins", format_u64(c.detector_bins));
    kv.emplace_back("detector_efficiency", format_double(c.detector_efficiency));
    kv.emplace_back("idler_efficiency", format_double(c.idler_efficiency));
    kv.emplace_back("dark_rate_hz", format_double(c.dark_rate));
    kv.emplace_back("detector_halfspan_mm", format_double(c.detector_halfspan / 1e-3));
    kv.emplace_back("coincidence_window_ns", format_double(c.coincidence_window / 1e-9));
    kv.emplace_back("signal_path_delay_ns", format_double(c.signal_path_delay / 1e-9));
    kv.emplace_back("sim_samples", format_u64(c.grid.samples));
    kv.emplace_back("sim_extent_mm", format_double(c.grid.extent / 1e-3));
    kv.emplace_back("seed", format_u64(c.seed));
}

}  // namespace

KvList echo_config(const EraserConfig& cfg) {
    KvList kv;
    echo_eraser_base(kv, cfg);
    return kv;
}

KvList echo_config(const DelayedChoiceConfig& cfg) {
    KvList kv;
    echo_eraser_base(kv, cfg.base);
    kv.emplace_back("splitter_transmittance", format_double(cfg.splitter_transmittance));
    return kv;
}

KvList echo_config(const AfsharConfig& c) {
    KvList kv;
    echo_common_slits(kv, c.wavelength, c.slit_width, c.slit_separation, c.beam_waist);
    kv.emplace_back("dist_slits_grid_m", format_double(c.dist_slits_grid));
    kv.emplace_back("dist_grid_lens_m", format_double(c.dist_grid_lens));
    kv.emplace_back("dist_lens_image_m", format_double(c.dist_lens_image));
    kv.emplace_back("focal_length_m", format_double(c.focal_length));
    kv.emplace_back("imaging_tolerance", format_double(c.imaging_tolerance));
    kv.emplace_back("wire_width_um", format_double(c.wire_width / 1e-6));
    kv.emplace_back("wire_count", format_u64(c.wire_count));
    kv.emplace_back("node_threshold", format_double(c.node_threshold));
    const char* blocking = (c.slit_blocking == SlitBlocking::SlitA)   ? "slit_a"
                           : (c.slit_blocking == SlitBlocking::SlitB) ? "slit_b"
                                                                      : "none";
    kv.emplace_back("slit_blocking", blocking);
    kv.emplace_back("grid_present", c.grid_present ? "true" : "false");
    kv.emplace_back("band_tolerance", format_double(c.band_loss_tolerance));
    kv.emplace_back("sim_samples", format_u64(c.grid.samples));
    kv.emplace_back("sim_extent_mm", format_double(c.grid.extent / 1e-3));
    kv.emplace_back("seed", format_u64(c.seed));
    return kv;
}

}  // namespace fringekit
