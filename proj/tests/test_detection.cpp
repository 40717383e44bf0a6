#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fringekit/detection.hpp"
#include "fringekit/errors.hpp"
#include "fringekit/rng.hpp"

using namespace fringekit;

TEST_CASE("zero profile and zero dark rate produce no clicks") {
    DetectorModel m;
    m.n_bins = 32;
    m.exposure = 1.0;
    const std::vector<double> zero(32, 0.0);
    CHECK(sample_clicks(zero, m, 1).empty());
}

TEST_CASE("profile length must match the bin count") {
    DetectorModel m;
    m.n_bins = 8;
    CHECK_THROWS_AS(sample_clicks(std::vector<double>(9, 1.0), m, 1), GridMismatchError);
    CHECK_THROWS_AS(sample_clicks(std::vector<double>{-1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, m, 1),
                    GeometryError);
}

TEST_CASE("clicks stay inside the exposure window and bin range") {
    DetectorModel m;
    m.n_bins = 16;
    m.exposure = 0.25;
    m.dark_rate = 10.0;
    const std::vector<double> profile(16, 50.0);
    const auto clicks = sample_clicks(profile, m, 3);
    CHECK(!clicks.empty());
    for (const auto& c : clicks) {
        CHECK(c.bin < m.n_bins);
        CHECK(c.timestamp >= 0.0);
        CHECK(c.timestamp < m.exposure);
    }
}

TEST_CASE("Poisson dispersion: variance/mean within [0.94, 1.06] at 1e4 expected counts") {
    DetectorModel m;
    m.n_bins = 4096;
    m.exposure = 1.0;
    const std::vector<double> profile(m.n_bins, 1e4);
    const auto counts = sample_click_counts(profile, m, 42);

    double mean = 0.0;
    for (auto c : counts) mean += static_cast<double>(c);
    mean /= static_cast<double>(counts.size());
    double var = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - mean;
        var += d * d;
    }
    var /= static_cast<double>(counts.size() - 1);
    CHECK(var / mean > 0.94);
    CHECK(var / mean < 1.06);
}

TEST_CASE("doubling the exposure doubles the expected total count") {
    DetectorModel m;
    m.n_bins = 64;
    m.exposure = 1.0;
    const std::vector<double> profile(64, 1600.0);  // ~1e5 expected in total

    DetectorModel m2 = m;
    m2.exposure = 2.0;

    auto total = [&](const DetectorModel& model, std::uint64_t seed) {
        double t = 0.0;
        for (auto c : sample_click_counts(profile, model, seed)) t += static_cast<double>(c);
        return t;
    };
    const double t1 = total(m, 7);
    const double t2 = total(m2, 8);
    CHECK(t2 / t1 == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("click histogram converges to the normalized profile (L1 Monte Carlo rate)") {
    // 10 coarse bins keep the per-bin error dominated by counting statistics
    DetectorModel m;
    m.n_bins = 10;
    m.exposure = 1.0;
    std::vector<double> profile(m.n_bins);
    double total = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double x = (static_cast<double>(i) - 4.5) / 3.0;
        profile[i] = 4e4 * std::exp(-x * x);
        total += profile[i];
    }
    const auto counts = sample_click_counts(profile, m, 42);
    double n = 0.0;
    for (auto c : counts) n += static_cast<double>(c);
    REQUIRE(n > 1e5);

    double l1 = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        l1 += std::fabs(static_cast<double>(counts[i]) / n - profile[i] / total);
    CHECK(l1 < 3.0 / std::sqrt(n));
}

TEST_CASE("latency: no signal and no noise never clicks") {
    ThresholdPopulation pop;
    pop.n_electrons = 100;
    pop.noise_energy_scale = 0.0;
    pop.binding_energy = 2.0;
    pop.signal_power_coupling = 1.0;
    LatencyOptions o;
    o.time_step = 1e-3;
    o.max_steps = 2000;
    const auto stats = first_click_latency(pop, 0.0, 50, 5, o);
    CHECK(stats.clicked_trials == 0);
    CHECK(!stats.mean.has_value());
}

TEST_CASE("latency: cold population approaches the classical charging time") {
    ThresholdPopulation pop;
    pop.n_electrons = 1000;
    pop.noise_energy_scale = 0.0;
    pop.binding_energy = 3.0;
    pop.signal_power_coupling = 2.0;
    const double intensity = 1.5;
    const double charging_time = pop.binding_energy / (pop.signal_power_coupling * intensity);

    LatencyOptions o;
    o.time_step = charging_time / 1000.0;
    const auto stats = first_click_latency(pop, intensity, 20, 9, o);
    REQUIRE(stats.clicked_trials == 20);
    CHECK(*stats.mean == doctest::Approx(charging_time).epsilon(2.0 / 1000.0));
}

TEST_CASE("latency: geometric first-crossing formula at 1e4 trials") {
    // fraction p of electrons within one step of threshold each step
    // => mean latency ~ dt / (1 - (1-p)^N)
    ThresholdPopulation pop;
    pop.n_electrons = 10000;
    pop.noise_energy_scale = 0.3;
    pop.binding_energy = 3.216;
    pop.signal_power_coupling = 3.0;
    const double intensity = 1.0;
    LatencyOptions o;
    o.time_step = 1e-3;

    const double p1 = std::exp(-(pop.binding_energy - pop.signal_power_coupling * intensity *
                                                          o.time_step) /
                               pop.noise_energy_scale);
    const double q = -std::expm1(static_cast<double>(pop.n_electrons) * std::log1p(-p1));
    const double formula = o.time_step / q;

    const auto stats = first_click_latency(pop, intensity, 10000, 42, o);
    REQUIRE(stats.clicked_trials == 10000);
    CHECK(*stats.mean == doctest::Approx(formula).epsilon(0.10));

    // brute-force per-electron oracle, small scale, same physics
    ThresholdPopulation small = pop;
    small.n_electrons = 400;
    const double p1s = std::exp(-(small.binding_energy - small.signal_power_coupling * intensity *
                                                             o.time_step) /
                                small.noise_energy_scale);
    const double qs = -std::expm1(static_cast<double>(small.n_electrons) * std::log1p(-p1s));

    std::mt19937_64 rng(777);
    std::exponential_distribution<double> noise(1.0 / small.noise_energy_scale);
    double brute_sum = 0.0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        for (std::uint64_t step = 1;; ++step) {
            const double gained =
                small.signal_power_coupling * intensity * static_cast<double>(step) * o.time_step;
            bool crossed = false;
            for (std::uint64_t e = 0; e < small.n_electrons && !crossed; ++e)
                crossed = noise(rng) + gained >= small.binding_energy;
            if (crossed) {
                brute_sum += static_cast<double>(step) * o.time_step;
                break;
            }
        }
    }
    const double brute_mean = brute_sum / trials;
    const auto lib = first_click_latency(small, intensity, 10000, 4242, o);
    CHECK(*lib.mean == doctest::Approx(brute_mean).epsilon(0.10));
    CHECK(*lib.mean == doctest::Approx(o.time_step / qs).epsilon(0.10));
}

TEST_CASE("latency: noise pre-staging beats the cold charging time and is monotone in noise") {
    ThresholdPopulation pop;
    pop.n_electrons = 10000;
    pop.binding_energy = 3.0;
    pop.signal_power_coupling = 1.0;
    const double intensity = 1.0;
    const double charging_time = 3.0;
    LatencyOptions o;
    o.time_step = charging_time / 1000.0;

    double prev_mean = charging_time * 2.0;
    for (double scale : {0.15, 0.25, 0.4}) {
        ThresholdPopulation p = pop;
        p.noise_energy_scale = scale;
        const auto stats = first_click_latency(p, intensity, 10000, 77, o);
        REQUIRE(stats.clicked_trials == 10000);
        CHECK(*stats.mean < prev_mean);
        prev_mean = *stats.mean;
    }
    CHECK(prev_mean < charging_time);
}
