#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fringekit/polarization.hpp"

using namespace fringekit;

namespace {
constexpr double kPi = std::numbers::pi;

double angle_of(const JonesVector& j) {
    // linear polarization angle from the vertical, for real-amplitude states
    return std::atan2(j.e_h.real(), j.e_v.real());
}
}  // namespace

TEST_CASE("intensity basics") {
    CHECK(intensity(JonesVector::vertical()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(intensity(JonesVector{0.5, 0.5}) == doctest::Approx(0.5).epsilon(1e-15));
    const complexd i_unit(0.0, 1.0);
    CHECK(intensity(JonesVector{i_unit / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(intensity(JonesVector{0.0, 0.0}) == 0.0);
}

TEST_CASE("polarizer aligned and crossed") {
    const JonesVector v = JonesVector::vertical();
    const JonesVector same = apply_polarizer(v, PolarizerAngle(0.0));
    CHECK(same.e_h == complexd(0.0, 0.0));
    CHECK(same.e_v == complexd(1.0, 0.0));

    const JonesVector gone = apply_polarizer(v, PolarizerAngle(kPi / 2));
    CHECK(std::abs(gone.e_h) < 1e-16);
    CHECK(std::abs(gone.e_v) < 1e-16);
}

TEST_CASE("pi/4 daughters carry the half amplitudes and the sign flip") {
    const JonesVector v = JonesVector::vertical();
    const JonesVector plus = apply_polarizer(v, PolarizerAngle(kPi / 4));
    const JonesVector minus = apply_polarizer(v, PolarizerAngle(-kPi / 4));

    CHECK(plus.e_h.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(plus.e_v.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(minus.e_h.real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(minus.e_v.real() == doctest::Approx(0.5).epsilon(1e-15));

    // sign structure is exact, not approximate
    CHECK(plus.e_h == -minus.e_h);
    CHECK(plus.e_v == minus.e_v);

    // Malus: each daughter carries half the intensity
    CHECK(intensity(plus) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("decompose is the identity on components") {
    const JonesVector j{complexd(-0.5, 0.25), complexd(0.5, -0.125)};
    const auto [h, v] = decompose(j);
    CHECK(h == j.e_h);
    CHECK(v == j.e_v);
    const auto [zh, zv] = decompose(JonesVector{0.0, 0.0});
    CHECK(zh == complexd(0.0, 0.0));
    CHECK(zv == complexd(0.0, 0.0));
}

TEST_CASE("angle canonicalization") {
    CHECK(PolarizerAngle(3.5 * kPi).radians() == doctest::Approx(-0.5 * kPi));
    CHECK(PolarizerAngle(-kPi).radians() == doctest::Approx(kPi));
    CHECK(PolarizerAngle(kPi).radians() == doctest::Approx(kPi));
    CHECK(PolarizerAngle(0.3).radians() == doctest::Approx(0.3));
}

TEST_CASE("property: Malus law, idempotence, extinction on random states") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-kPi, kPi);

    for (int trial = 0; trial < 2000; ++trial) {
        const double theta_j = u(rng);
        const double amp = std::exp(std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
        const JonesVector j = JonesVector::linear(theta_j) * complexd(amp, 0.0);
        const double theta_p = u(rng);
        const PolarizerAngle pol(theta_p);

        const JonesVector out = apply_polarizer(j, pol);

        // Malus law against the analytic cos^2
        const double expected = intensity(j) * std::pow(std::cos(theta_p - theta_j), 2);
        CHECK(intensity(out) == doctest::Approx(expected).epsilon(1e-12));

        // idempotence
        const JonesVector twice = apply_polarizer(out, pol);
        CHECK(std::abs(twice.e_h - out.e_h) <= 1e-12 * (1.0 + std::abs(out.e_h)));
        CHECK(std::abs(twice.e_v - out.e_v) <= 1e-12 * (1.0 + std::abs(out.e_v)));

        // orthogonal extinction
        const JonesVector crossed = apply_polarizer(out, PolarizerAngle(theta_p + kPi / 2));
        CHECK(intensity(crossed) <= 1e-12 * intensity(j) + 1e-300);
    }
}

TEST_CASE("property: pi sign structure for arbitrary vertical amplitudes") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const JonesVector mother{0.0, complexd(u(rng), u(rng))};
        const JonesVector plus = apply_polarizer(mother, PolarizerAngle(kPi / 4));
        const JonesVector minus = apply_polarizer(mother, PolarizerAngle(-kPi / 4));
        CHECK(plus.e_h == -minus.e_h);
        CHECK(plus.e_v == minus.e_v);
    }
}

TEST_CASE("polarizer output never gains intensity") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const JonesVector j{complexd(u(rng), u(rng)), complexd(u(rng), u(rng))};
        const double theta = u(rng);
        CHECK(intensity(apply_polarizer(j, PolarizerAngle(theta))) <=
              intensity(j) * (1.0 + 1e-12));
    }
}

TEST_CASE("linear constructor is normalized and sits at the requested angle") {
    for (double theta : {-2.8, -kPi / 4, 0.0, 0.3, kPi / 4, 1.4}) {
        const JonesVector j = JonesVector::linear(theta);
        CHECK(intensity(j) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(angle_of(j) == doctest::Approx(theta).epsilon(1e-12));
    }
}
