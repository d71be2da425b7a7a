#include <doctest.h>

#include <cmath>
#include <random>

#include "telecode/purification.hpp"

using namespace telecode;
using pur::BellDiagonalState;

TEST_SUITE("purification") {

TEST_CASE("werner initialization") {
    const BellDiagonalState perfect = pur::werner(1.0);
    CHECK(perfect.a == 1.0);
    CHECK(perfect.b == 0.0);
    CHECK(perfect.c == 0.0);
    CHECK(perfect.d == 0.0);
    CHECK(perfect.round == 0);

    const BellDiagonalState mixed = pur::werner(0.25);
    CHECK(mixed.a == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mixed.b == doctest::Approx(0.25).epsilon(1e-15));

    const BellDiagonalState s = pur::werner(0.9);
    CHECK(s.a == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(s.b == doctest::Approx(1.0 / 30.0).epsilon(1e-15));

    CHECK_THROWS_AS(pur::werner(-0.1), OutOfRange);
    CHECK_THROWS_AS(pur::werner(1.1), OutOfRange);
}

TEST_CASE("one round from werner(0.9)") {
    // exact rationals: (365/394, 1/394, 1/394, 27/394)
    const BellDiagonalState s = pur::dejmps_round(pur::werner(0.9));
    CHECK(s.a == doctest::Approx(365.0 / 394.0).epsilon(1e-12));
    CHECK(s.b == doctest::Approx(1.0 / 394.0).epsilon(1e-12));
    CHECK(s.c == doctest::Approx(1.0 / 394.0).epsilon(1e-12));
    CHECK(s.d == doctest::Approx(27.0 / 394.0).epsilon(1e-12));
    CHECK(s.round == 1);
}

TEST_CASE("fixed points") {
    const BellDiagonalState perfect = pur::dejmps_round(pur::werner(1.0));
    CHECK(perfect.a == doctest::Approx(1.0).epsilon(1e-15));

    BellDiagonalState mixed = pur::werner(0.25);
    for (int r = 0; r < 4; ++r) {
        mixed = pur::dejmps_round(mixed);
        CHECK(mixed.a == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(mixed.d == doctest::Approx(0.25).epsilon(1e-12));
    }

    const BellDiagonalState deep = pur::purify(1.0, 3);
    CHECK(deep.a == 1.0);
    CHECK(deep.round == 3);
}

TEST_CASE("purify composes werner and rounds") {
    const BellDiagonalState direct = pur::purify(0.9, 1);
    const BellDiagonalState manual = pur::dejmps_round(pur::werner(0.9));
    CHECK(direct.a == manual.a);
    CHECK(direct.d == manual.d);
    CHECK(pur::purify(0.7, 0).a == doctest::Approx(0.7));
    CHECK_THROWS_AS(pur::purify(0.9, 33), GuardExceeded);
}

TEST_CASE("normalization is preserved through rounds") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        double raw[4] = {uniform(rng), uniform(rng), uniform(rng), uniform(rng)};
        const double sum = raw[0] + raw[1] + raw[2] + raw[3];
        BellDiagonalState s{raw[0] / sum, raw[1] / sum, raw[2] / sum, raw[3] / sum, 0};
        for (int r = 0; r < 5; ++r) {
            s = pur::dejmps_round(s);
            CHECK(std::abs(s.a + s.b + s.c + s.d - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("fidelity increases monotonically for f0 above one half") {
    for (double f0 = 0.55; f0 < 0.96; f0 += 0.05) {
        BellDiagonalState s = pur::werner(f0);
        for (int r = 0; r < 5; ++r) {
            const BellDiagonalState next = pur::dejmps_round(s);
            if (1.0 - s.a > 1e-9) {
                CHECK(next.a > s.a);
            }
            s = next;
        }
    }
}

TEST_CASE("nonphysical input is rejected") {
    CHECK_THROWS_AS(pur::dejmps_round(BellDiagonalState{0.0, 0.0, 0.0, 0.0, 0}),
                    ZeroNormalization);
    CHECK_THROWS_AS(pur::validate(BellDiagonalState{0.5, 0.5, 0.5, 0.0, 0}), OutOfRange);
    CHECK_THROWS_AS(pur::validate(BellDiagonalState{1.2, -0.2, 0.0, 0.0, 0}), OutOfRange);
}

TEST_CASE("channel extraction") {
    const pur::PauliChannel perfect = pur::to_channel(pur::werner(1.0));
    CHECK(perfect.px == 0.0);
    CHECK(perfect.qx == 0.0);
    CHECK(perfect.qz == 0.0);

    const pur::PauliChannel sym = pur::to_channel(pur::werner(0.9));
    CHECK(sym.px == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
    CHECK(sym.py == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
    CHECK(sym.pz == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
    CHECK(sym.qx == doctest::Approx(1.0 / 15.0).epsilon(1e-15));
    CHECK(sym.qz == doctest::Approx(1.0 / 15.0).epsilon(1e-15));

    // after one round the phase-flip branch dominates
    const pur::PauliChannel asym = pur::to_channel(pur::purify(0.9, 1));
    CHECK(asym.px == doctest::Approx(1.0 / 394.0).epsilon(1e-12));
    CHECK(asym.py == doctest::Approx(1.0 / 394.0).epsilon(1e-12));
    CHECK(asym.pz == doctest::Approx(27.0 / 394.0).epsilon(1e-12));
    CHECK(asym.pz / asym.px == doctest::Approx(27.0).epsilon(1e-9));
}

TEST_CASE("purification drives the channel Z-heavy at odd rounds") {
    // After round two the recursion passes through an exactly symmetric point
    // (c and d coincide for any Werner input), so the biased-channel claim is
    // asserted at rounds one and three and as a no-worse-than-symmetric bound
    // at round two.
    for (double f0 = 0.55; f0 < 0.96; f0 += 0.05) {
        const pur::PauliChannel r1 = pur::to_channel(pur::purify(f0, 1));
        const pur::PauliChannel r2 = pur::to_channel(pur::purify(f0, 2));
        const pur::PauliChannel r3 = pur::to_channel(pur::purify(f0, 3));
        CHECK(r1.pz / r1.px > 1.0);
        CHECK(r2.pz / r2.px == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r3.pz / r3.px > 1.0);
    }
}

TEST_CASE("pair accounting") {
    CHECK(pur::pairs_consumed(0) == 1);
    CHECK(pur::pairs_consumed(3) == 8);
    CHECK(pur::pairs_consumed(10) == 1024);
}

}  // TEST_SUITE
