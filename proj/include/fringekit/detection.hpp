#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace fringekit {

/// Spatially binned photodetector with Poisson click statistics.
struct DetectorModel {
    double efficiency = 1.0;   // in [0, 1]
    double dark_rate = 0.0;    // Hz per bin
    std::size_t n_bins = 1;
    double exposure = 1.0;     // seconds
};

/// One discrete detection event.
struct ClickEvent {
    std::uint32_t detector_id = 0;
    std::uint32_t bin = 0;
    double timestamp = 0.0;  // seconds within the exposure window
};

/// Electron population of the threshold (prompt photoemission) model: noise
/// energies are exponentially distributed with scale noise_energy_scale, and
/// a coherent signal of unit intensity feeds each electron
/// signal_power_coupling eV per second.
struct ThresholdPopulation {
    std::uint64_t n_electrons = 10000;
    double noise_energy_scale = 0.1;    // eV; 0 = cold population
    double binding_energy = 2.0;        // eV
    double signal_power_coupling = 1.0; // eV/s per unit intensity
};

/// Per-bin expected counts: efficiency * I_bin * exposure + dark_rate * exposure.
std::vector<double> expected_counts(const std::vector<double>& profile, const DetectorModel& model);

/// Poisson-draw per-bin click counts for the given intensity profile.
/// profile.size() must equal model.n_bins.
std::vector<std::uint64_t> sample_click_counts(const std::vector<double>& profile,
                                               const DetectorModel& model, std::uint64_t seed);

/// Full click list: counts as above plus per-click timestamps uniform in
/// [0, exposure). Deterministic under seed.
std::vector<ClickEvent> sample_clicks(const std::vector<double>& profile, const DetectorModel& model,
                                      std::uint64_t seed, std::uint32_t detector_id = 0);

struct LatencyOptions {
    double time_step = 0.0;      // seconds; 0 = auto (1/1000 of the cold charging time)
    std::uint64_t max_steps = 1000000;
};

struct LatencyStats {
    std::optional<double> mean;  // empty when no trial clicked
    std::optional<double> p10;
    std::optional<double> p50;
    std::optional<double> p90;
    std::uint64_t clicked_trials = 0;
    std::uint64_t trials = 0;
};

/// Time from signal onset to the first electron crossing the binding
/// threshold, over n_trials independent populations. Each step the noise
/// energies re-randomize; an electron escapes once noise + accumulated signal
/// energy reaches the binding energy. With noise pre-staging part of the
/// population near threshold, the first click lands far sooner than the cold
/// charging time binding_energy / (coupling * intensity).
LatencyStats first_click_latency(const ThresholdPopulation& pop, double incident_intensity,
                                 std::uint64_t n_trials, std::uint64_t seed,
                                 const LatencyOptions& opts = {});

}  // namespace fringekit
