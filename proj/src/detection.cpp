#include "fringekit/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fringekit/errors.hpp"
#include "fringekit/rng.hpp"

namespace fringekit {

namespace {

void validate(const DetectorModel& m) {
    if (m.efficiency < 0.0 || m.efficiency > 1.0)
        throw GeometryError("detector: efficiency must lie in [0,1]");
    if (m.dark_rate < 0.0) throw GeometryError("detector: dark_rate must be >= 0");
    if (m.n_bins < 1) throw GeometryError("detector: n_bins must be >= 1");
    if (!(m.exposure > 0.0)) throw GeometryError("detector: exposure must be > 0");
}

}  // namespace

std::vector<double> expected_counts(const std::vector<double>& profile, const DetectorModel& model) {
    validate(model);
    if (profile.size() != model.n_bins)
        throw GridMismatchError("expected_counts: profile length does not match n_bins");
    std::vector<double> mu(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i] < 0.0) throw GeometryError("expected_counts: negative intensity");
        mu[i] = model.efficiency * profile[i] * model.exposure + model.dark_rate * model.exposure;
    }
    return mu;
}

std::vector<std::uint64_t> sample_click_counts(const std::vector<double>& profile,
                                               const DetectorModel& model, std::uint64_t seed) {
    const std::vector<double> mu = expected_counts(profile, model);
    auto rng = derive_rng(seed, "detection.counts");
    std::vector<std::uint64_t> counts(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] == 0.0) {
            counts[i] = 0;
            continue;
        }
        std::poisson_distribution<std::uint64_t> poisson(mu[i]);
        counts[i] = poisson(rng);
    }
    return counts;
}

std::vector<ClickEvent> sample_clicks(const std::vector<double>& profile, const DetectorModel& model,
                                      std::uint64_t seed, std::uint32_t detector_id) {
    const auto counts = sample_click_counts(profile, model, seed);
    auto rng = derive_rng(seed, "detection.timestamps");
    std::vector<ClickEvent> clicks;
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    clicks.reserve(total);
    for (std::uint32_t bin = 0; bin < counts.size(); ++bin) {
        for (std::uint64_t j = 0; j < counts[bin]; ++j) {
            clicks.push_back({detector_id, bin, uniform01(rng) * model.exposure});
        }
    }
    return clicks;
}

LatencyStats first_click_latency(const ThresholdPopulation& pop, double incident_intensity,
                                 std::uint64_t n_trials, std::uint64_t seed,
                                 const LatencyOptions& opts) {
    if (pop.n_electrons < 1) throw GeometryError("latency: need at least one electron");
    if (!(pop.binding_energy > 0.0)) throw GeometryError("latency: binding_energy must be > 0");
    if (pop.noise_energy_scale < 0.0) throw GeometryError("latency: noise scale must be >= 0");
    if (pop.noise_energy_scale > 0.0 && !(pop.binding_energy > pop.noise_energy_scale))
        throw GeometryError("latency: binding_energy must exceed noise_energy_scale");
    if (incident_intensity < 0.0) throw GeometryError("latency: intensity must be >= 0");
    if (n_trials < 1) throw GeometryError("latency: n_trials must be >= 1");

    const double gain_rate = pop.signal_power_coupling * incident_intensity;  // eV/s
    double dt = opts.time_step;
    if (dt <= 0.0) dt = (gain_rate > 0.0) ? pop.binding_energy / gain_rate / 1000.0 : 1e-3;

    auto rng = derive_rng(seed, "detection.latency");
    const double n = static_cast<double>(pop.n_electrons);

    // P(some electron over threshold) per step, as a function of the signal
    // energy already accumulated. The per-electron noise draws are iid
    // exponential, so only this aggregate probability needs sampling.
    auto step_click_prob = [&](double accumulated) {
        const double deficit = pop.binding_energy - accumulated;
        if (deficit <= 0.0) return 1.0;
        if (pop.noise_energy_scale == 0.0) return 0.0;
        const double p1 = std::exp(-deficit / pop.noise_energy_scale);
        // 1 - (1 - p1)^n without cancellation
        return -std::expm1(n * std::log1p(-p1));
    };

    std::vector<double> latencies;
    latencies.reserve(n_trials);
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        for (std::uint64_t step = 1; step <= opts.max_steps; ++step) {
            const double time = static_cast<double>(step) * dt;
            const double q = step_click_prob(gain_rate * time);
            if (q > 0.0 && uniform01(rng) < q) {
                latencies.push_back(time);
                break;
            }
        }
    }

    LatencyStats stats;
    stats.trials = n_trials;
    stats.clicked_trials = latencies.size();
    if (!latencies.empty()) {
        double sum = 0.0;
        for (double v : latencies) sum += v;
        stats.mean = sum / static_cast<double>(latencies.size());
        std::sort(latencies.begin(), latencies.end());
        auto quantile = [&](double q) {
            const double pos = q * static_cast<double>(latencies.size() - 1);
            const std::size_t lo = static_cast<std::size_t>(pos);
            const std::size_t hi = std::min(lo + 1, latencies.size() - 1);
            const double w = pos - static_cast<double>(lo);
            return latencies[lo] * (1.0 - w) + latencies[hi] * w;
        };
        stats.p10 = quantile(0.10);
        stats.p50 = quantile(0.50);
        stats.p90 = quantile(0.90);
    }
    return stats;
}

}  // namespace fringekit
