#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fringekit/errors.hpp"
#include "fringekit/rng.hpp"
#include "fringekit/serialize.hpp"
#include "fringekit/sources.hpp"

using namespace fringekit;

TEST_CASE("empty stream and basic polarization structure") {
    CHECK(generate_pdc_pairs(0, PdcType::TypeI, 1e5, 1).empty());

    const auto type1 = generate_pdc_pairs(64, PdcType::TypeI, 1e5, 7);
    for (const auto& p : type1) {
        CHECK(p.signal.e_h == complexd(0.0, 0.0));
        CHECK(p.signal.e_v == complexd(1.0, 0.0));
        CHECK(p.idler.e_h == complexd(1.0, 0.0));
        CHECK(p.idler.e_v == complexd(0.0, 0.0));
        // anticorrelated: signal.idler inner product vanishes
        CHECK(p.signal.e_h * std::conj(p.idler.e_h) + p.signal.e_v * std::conj(p.idler.e_v) ==
              complexd(0.0, 0.0));
    }

    const auto type2 = generate_pdc_pairs(16, PdcType::TypeII, 1e5, 7);
    for (const auto& p : type2) {
        CHECK(p.idler.e_v == complexd(1.0, 0.0));
        CHECK(p.idler.e_h == complexd(0.0, 0.0));
    }
}

TEST_CASE("timestamps strictly increase and follow the exponential rate") {
    const double rate = 1e5;
    const auto pairs = generate_pdc_pairs(100000, PdcType::TypeI, rate, 42);
    REQUIRE(pairs.size() == 100000);

    double prev = 0.0;
    double sum = 0.0;
    for (const auto& p : pairs) {
        CHECK(p.timestamp > prev);
        sum += p.timestamp - prev;
        prev = p.timestamp;
    }
    const double mean_gap = sum / static_cast<double>(pairs.size());
    CHECK(mean_gap == doctest::Approx(1.0 / rate).epsilon(0.02));

    CHECK_THROWS_AS(generate_pdc_pairs(4, PdcType::TypeI, 0.0, 1), GeometryError);
}

TEST_CASE("seed determinism is bit exact") {
    const auto a = generate_pdc_pairs(5000, PdcType::TypeI, 2e4, 99);
    const auto b = generate_pdc_pairs(5000, PdcType::TypeI, 2e4, 99);
    const auto c = generate_pdc_pairs(5000, PdcType::TypeI, 2e4, 100);
    REQUIRE(a.size() == b.size());
    bool all_equal = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        all_equal = all_equal && (a[i].timestamp == b[i].timestamp);
    CHECK(all_equal);
    bool any_differs = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        any_differs = any_differs || (a[i].timestamp != c[i].timestamp);
    CHECK(any_differs);
}

TEST_CASE("beam splitter limits and whole-pulse accounting") {
    auto rng = derive_rng(5, "test.bs");
    for (int i = 0; i < 100; ++i) {
        CHECK(beam_splitter(1.0, rng).port == Port::Transmitted);
        CHECK(beam_splitter(0.0, rng).port == Port::Reflected);
    }
    CHECK_THROWS_AS(beam_splitter(1.5, rng), GeometryError);

    // every pulse exits exactly one port; T=0.5 count sits in the central
    // 99% binomial interval for n = 10^4
    int transmitted = 0;
    const int n = 10000;
    auto rng2 = derive_rng(42, "test.bs2");
    for (int i = 0; i < n; ++i)
        if (beam_splitter(0.5, rng2).port == Port::Transmitted) ++transmitted;
    const int reflected = n - transmitted;
    CHECK(transmitted + reflected == n);
    CHECK(transmitted >= 4871);
    CHECK(transmitted <= 5129);
}

TEST_CASE("pulse stream CSV schema") {
    const auto pairs = generate_pdc_pairs(3, PdcType::TypeI, 1e5, 11);
    const std::string csv = pulses_to_csv(pairs);
    CHECK(csv.rfind("timestamp_s,sig_re_h,sig_im_h,sig_re_v,sig_im_v,idl_re_h,idl_im_h,idl_re_v,"
                    "idl_im_v\n",
                    0) == 0);
    // header + one line per pulse
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 4);
}
