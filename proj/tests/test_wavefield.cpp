#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fringekit/errors.hpp"
#include "fringekit/wavefield.hpp"
#include "oracles.hpp"

using namespace fringekit;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLambda = 702e-9;

double second_moment_width(const ScalarField& f) {
    // intensity e^{-2x^2/w^2} has sigma = w/2
    double s0 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double I = std::norm(f[i]);
        const double x = f.position(i);
        s0 += I;
        s2 += I * x * x;
    }
    return 2.0 * std::sqrt(s2 / s0);
}
}  // namespace

TEST_CASE("field invariants are enforced") {
    CHECK_THROWS_AS(ScalarField(GridSpec{1, 1e-6, 0.0}, kLambda), GeometryError);
    CHECK_THROWS_AS(ScalarField(GridSpec{16, 0.0, 0.0}, kLambda), GeometryError);
    CHECK_THROWS_AS(ScalarField(GridSpec{16, 1e-6, 0.0}, -1.0), GeometryError);
    CHECK_THROWS_AS(ScalarField(GridSpec{16, 1e-6, 0.0}, kLambda, std::vector<complexd>(8)),
                    GridMismatchError);
}

TEST_CASE("two-slit mask geometry and bookkeeping") {
    const GridSpec grid = GridSpec::centered(1000, 2e-3);
    const auto mask = make_two_slit_mask(grid, 40e-6, 250e-6);

    std::size_t open = 0;
    for (double t : mask.transmission) {
        CHECK((t == 0.0 || t == 1.0));
        if (t == 1.0) ++open;
    }
    // open fraction 2*40/2000 = 4%, up to one sample per slit edge
    CHECK(std::llabs(static_cast<long long>(open) - 40) <= 4);

    ScalarField uniform(grid, kLambda, std::vector<complexd>(grid.n, complexd{1.0, 0.0}));
    const ScalarField through = apply_mask(uniform, mask);
    CHECK(through.total_power() ==
          doctest::Approx(uniform.total_power() * static_cast<double>(open) /
                          static_cast<double>(grid.n))
              .epsilon(1e-12));

    CHECK_THROWS_AS(make_two_slit_mask(grid, 250e-6, 40e-6), GeometryError);
    CHECK_THROWS_AS(make_two_slit_mask(grid, 250e-6, 250e-6), GeometryError);
    CHECK_THROWS_AS(make_two_slit_mask(grid, 40e-6, 2.5e-3), GeometryError);
}

TEST_CASE("apply_mask identity, null, half and mismatch") {
    const GridSpec grid = GridSpec::centered(64, 1e-3);
    ScalarField f(grid, kLambda, std::vector<complexd>(64, complexd{0.5, 0.25}));

    ApertureMask ones{grid, std::vector<double>(64, 1.0)};
    const ScalarField same = apply_mask(f, ones);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(same[i] == f[i]);

    ApertureMask zeros{grid, std::vector<double>(64, 0.0)};
    CHECK(apply_mask(f, zeros).total_power() == 0.0);

    ApertureMask half{grid, std::vector<double>(64, 1.0)};
    for (std::size_t i = 0; i < 32; ++i) half.transmission[i] = 0.0;
    CHECK(apply_mask(f, half).total_power() == doctest::Approx(0.5 * f.total_power()));

    ApertureMask other{GridSpec::centered(64, 2e-3), std::vector<double>(64, 1.0)};
    CHECK_THROWS_AS(apply_mask(f, other), GridMismatchError);
    ApertureMask bad{grid, std::vector<double>(64, 1.5)};
    CHECK_THROWS_AS(apply_mask(f, bad), GeometryError);
}

TEST_CASE("plane wave is an eigenfunction of propagation") {
    const GridSpec grid = GridSpec::centered(256, 4e-3);
    ScalarField f(grid, kLambda, std::vector<complexd>(256, complexd{1.0, 0.0}));
    const double z = 0.37;
    const ScalarField out = propagate(f, z);
    const complexd expected = std::polar(1.0, 2.0 * kPi * std::sqrt(1.0 / (kLambda * kLambda)) * z);
    for (std::size_t i = 0; i < out.size(); i += 17) {
        CHECK(std::abs(out[i] - expected) < 1e-9);
    }
}

TEST_CASE("propagate(f, 0) is the identity") {
    const GridSpec grid = GridSpec::centered(512, 8e-3);
    const ScalarField f = gaussian_beam(grid, kLambda, 0.3e-3, 0.4e-3);
    const ScalarField out = propagate(f, 0.0);
    for (std::size_t i = 0; i < f.size(); i += 13) CHECK(std::abs(out[i] - f[i]) < 1e-13);
    CHECK_THROWS_AS(propagate(f, -1.0), GeometryError);
}

TEST_CASE("Gaussian beam waist follows w0 sqrt(1+(z/zR)^2)") {
    const double w0 = 50e-6;
    const double zr = kPi * w0 * w0 / kLambda;
    const GridSpec grid = GridSpec::centered(2048, 4e-3);
    const ScalarField f = gaussian_beam(grid, kLambda, 0.0, w0);
    CHECK(second_moment_width(f) == doctest::Approx(w0).epsilon(1e-3));

    for (double factor : {0.5, 1.0, 2.0}) {
        const double z = factor * zr;
        const double expected = w0 * std::sqrt(1.0 + (z / zr) * (z / zr));
        const ScalarField out = propagate(f, z);
        CHECK(second_moment_width(out) == doctest::Approx(expected).epsilon(5e-3));
        CHECK(out.total_power() == doctest::Approx(f.total_power()).epsilon(1e-10));
    }
}

TEST_CASE("angular spectrum agrees with direct Fresnel quadrature to 1e-6") {
    const GridSpec grid = GridSpec::centered(512, 12.8e-3);
    const double z = 1.0;

    SUBCASE("centered Gaussian") {
        const ScalarField f = gaussian_beam(grid, kLambda, 0.0, 1.0e-3);
        const ScalarField asm_out = propagate(f, z);
        const auto oracle = oracles::fresnel_quadrature(f, z);
        CHECK(oracles::relative_l2(asm_out.samples(), oracle) < 1e-6);
        CHECK(asm_out.total_power() == doctest::Approx(f.total_power()).epsilon(1e-10));
    }

    SUBCASE("shifted two-beam superposition with complex weights") {
        const ScalarField g1 = gaussian_beam(grid, kLambda, -1.0e-3, 0.8e-3);
        const ScalarField g2 = gaussian_beam(grid, kLambda, 1.2e-3, 1.1e-3);
        const ScalarField f =
            linear_combination(complexd{0.8, 0.3}, g1, complexd{-0.45, 0.9}, g2);
        const ScalarField asm_out = propagate(f, z);
        const auto oracle = oracles::fresnel_quadrature(f, z);
        CHECK(oracles::relative_l2(asm_out.samples(), oracle) < 1e-6);
        CHECK(asm_out.total_power() == doctest::Approx(f.total_power()).epsilon(1e-10));
    }

    SUBCASE("several distances conserve power to 1e-10") {
        const ScalarField f = gaussian_beam(grid, kLambda, 0.0, 1.0e-3);
        for (double zz : {0.1, 0.5, 1.0, 2.0}) {
            const ScalarField out = propagate(f, zz);
            CHECK(out.total_power() == doctest::Approx(f.total_power()).epsilon(1e-10));
        }
    }
}

TEST_CASE("propagation is linear") {
    const GridSpec grid = GridSpec::centered(512, 12.8e-3);
    const ScalarField g1 = gaussian_beam(grid, kLambda, -0.8e-3, 0.9e-3);
    const ScalarField g2 = gaussian_beam(grid, kLambda, 0.5e-3, 1.2e-3);
    const complexd alpha{1.3, -0.2}, beta{0.1, 0.77};
    const double z = 0.6;

    const ScalarField lhs = propagate(linear_combination(alpha, g1, beta, g2), z);
    const ScalarField rhs =
        linear_combination(alpha, propagate(g1, z), beta, propagate(g2, z));
    CHECK(oracles::relative_l2(lhs.samples(), rhs.samples()) < 1e-10);
}

TEST_CASE("two-slit far field shows the lambda z / d fringe period") {
    // hard-edged slits carry broadband tails, so the band guard is relaxed
    const double d = 250e-6, w = 40e-6, z = 0.3;
    const GridSpec grid = GridSpec::centered(32768, 0.1);
    ScalarField uniform(grid, kLambda, std::vector<complexd>(grid.n, complexd{1.0, 0.0}));
    const ScalarField aperture = apply_mask(uniform, make_two_slit_mask(grid, w, d));

    const double expected = kLambda * z / d;

    const ScalarField far = propagate(aperture, z, PropagationOptions{0.05});
    const double spacing_asm =
        oracles::central_node_spacing(far.intensity(), far.positions(), 2.5e-3);
    CHECK(spacing_asm == doctest::Approx(expected).epsilon(0.01));

    // independent check: Fresnel quadrature straight from the aperture samples
    const GridSpec slit_grid = GridSpec::centered(512, 0.33e-3);
    ScalarField slit_uniform(slit_grid, kLambda,
                             std::vector<complexd>(slit_grid.n, complexd{1.0, 0.0}));
    const ScalarField slits = apply_mask(slit_uniform, make_two_slit_mask(slit_grid, w, d));
    std::vector<double> screen_positions;
    for (int i = -600; i <= 600; ++i) screen_positions.push_back(i * 5e-6 * 2.0);
    const auto far_oracle = oracles::fresnel_quadrature(slits, z, screen_positions);
    std::vector<double> oracle_intensity(far_oracle.size());
    for (std::size_t i = 0; i < far_oracle.size(); ++i)
        oracle_intensity[i] = std::norm(far_oracle[i]);
    const double spacing_oracle =
        oracles::central_node_spacing(oracle_intensity, screen_positions, 2.5e-3);
    CHECK(spacing_oracle == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("sampling guard rejects broadband fields over long hops") {
    const GridSpec grid = GridSpec::centered(128, 1e-3);
    std::vector<complexd> alternating(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) alternating[i] = (i % 2 == 0) ? 1.0 : -1.0;
    ScalarField f(grid, kLambda, alternating);
    CHECK_THROWS_AS(propagate(f, 1.0), SamplingViolationError);
    CHECK_NOTHROW(propagate(f, 1.0, PropagationOptions{1.0}));
}

TEST_CASE("thin lens conserves power and the f->infinity limit is the identity") {
    const GridSpec grid = GridSpec::centered(1024, 6e-3);
    const ScalarField f = gaussian_beam(grid, kLambda, 0.2e-3, 0.5e-3);

    const ScalarField bent = apply_thin_lens(f, 0.25);
    CHECK(bent.total_power() == doctest::Approx(f.total_power()).epsilon(1e-12));

    const ScalarField flat = apply_thin_lens(f, 1e15);
    for (std::size_t i = 0; i < f.size(); i += 11) CHECK(std::abs(flat[i] - f[i]) <= 1e-12);

    CHECK_THROWS_AS(apply_thin_lens(f, 0.0), GeometryError);
}

TEST_CASE("2f-2f imaging re-forms a point source at the conjugate point") {
    const double focal = 0.1, w0 = 30e-6, x0 = 0.5e-3;
    const GridSpec grid = GridSpec::centered(2048, 20e-3);
    const ScalarField src = gaussian_beam(grid, kLambda, x0, w0);

    ScalarField f = propagate(src, 2.0 * focal);
    f = apply_thin_lens(f, focal);
    f = propagate(f, 2.0 * focal);

    const auto I = f.intensity();
    std::size_t peak = 0;
    for (std::size_t i = 1; i < I.size(); ++i)
        if (I[i] > I[peak]) peak = i;
    CHECK(std::fabs(f.position(peak) - (-x0)) <= grid.pitch);
    CHECK(f.total_power() == doctest::Approx(src.total_power()).epsilon(1e-10));
}

TEST_CASE("intensity profile adds the two polarization components") {
    const GridSpec grid = GridSpec::centered(64, 1e-3);
    ScalarField h(grid, kLambda), v(grid, kLambda);
    for (std::size_t i = 0; i < 64; ++i) {
        h[i] = complexd(0.5, 0.0);
        v[i] = complexd(0.0, -1.5);
    }
    const VectorField vf(h, v);
    const auto prof = intensity_profile(vf);
    for (double p : prof) CHECK(p == doctest::Approx(0.25 + 2.25).epsilon(1e-15));

    ScalarField null_h(grid, kLambda), null_v(grid, kLambda);
    for (double p : intensity_profile(VectorField(null_h, null_v))) CHECK(p == 0.0);

    ScalarField other(GridSpec::centered(64, 2e-3), kLambda);
    CHECK_THROWS_AS(VectorField(h, other), GridMismatchError);
}
