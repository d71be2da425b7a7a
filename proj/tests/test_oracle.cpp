#include <doctest.h>

#include <cmath>

#include "telecode/oracle.hpp"
#include "telecode/reliability.hpp"

using namespace telecode;
using oracle::Branch;
using oracle::Convention;
using oracle::DecodeMode;
using oracle::SyndromeTable;

namespace {

const css::CodeRegistry& reg() {
    return css::builtin_registry();
}

// Exhaustive 4^n evaluation of the two-table lookup decoder under the full
// correlated channel; independent of the transfer-matrix implementation.
double brute_joint(const css::CssCode& code, const pur::PauliChannel& ch,
                   const SyndromeTable& xt, const SyndromeTable& zt) {
    const double pid = 1.0 - ch.px - ch.py - ch.pz;
    const std::uint32_t total = std::uint32_t{1} << code.n;
    double acc = 0.0;
    for (std::uint32_t x = 0; x < total; ++x) {
        for (std::uint32_t z = 0; z < total; ++z) {
            double p = 1.0;
            for (std::size_t i = 0; i < code.n; ++i) {
                const bool xb = (x >> i) & 1;
                const bool zb = (z >> i) & 1;
                p *= xb ? (zb ? ch.py : ch.px) : (zb ? ch.pz : pid);
            }
            if (p == 0.0) {
                continue;
            }
            const auto rx = xt.decode(xt.syndrome_of(x));
            bool fail = !rx.has_value() || xt.residual_is_logical(x ^ *rx);
            if (!fail) {
                const auto rz = zt.decode(zt.syndrome_of(z));
                fail = !rz.has_value() || zt.residual_is_logical(z ^ *rz);
            }
            if (fail) {
                acc += p;
            }
        }
    }
    return acc;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("operational branch distances") {
    const auto dists = [](const char* id) {
        const oracle::OperationalDistances d =
            oracle::measure_operational_distances(reg().at(id), 5);
        REQUIRE(d.x_branch.has_value());
        REQUIRE(d.z_branch.has_value());
        return std::pair<std::size_t, std::size_t>{*d.x_branch, *d.z_branch};
    };
    CHECK(dists("uncoded") == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(dists("steane-7") == std::pair<std::size_t, std::size_t>{3, 3});
    CHECK(dists("punct-8") == std::pair<std::size_t, std::size_t>{3, 3});
    CHECK(dists("base-17") == std::pair<std::size_t, std::size_t>{5, 5});
    // the asymmetric code: the 5 protects the bit-flip branch, the 3 the
    // phase-flip branch, opposite to the label order
    CHECK(dists("punct-13") == std::pair<std::size_t, std::size_t>{5, 3});
}

TEST_CASE("convention resolution is direct for symmetric codes") {
    for (const char* id : {"uncoded", "steane-7", "punct-8", "base-17"}) {
        const oracle::ConventionResolution res = oracle::resolve_convention(reg().at(id));
        CHECK(res.convention == Convention::direct);
        CHECK(res.radius_x == reg().at(id).tx);
        CHECK(res.radius_z == reg().at(id).tz);
    }
}

TEST_CASE("punct-13 trips the label pairing and resolves swapped") {
    const css::CssCode& p13 = reg().at("punct-13");

    // at the labeled radii the phase-flip table hits a genuine contradiction
    CHECK_THROWS_AS(SyndromeTable(p13, Branch::z_errors, p13.tz), DistanceContradiction);

    const oracle::ConventionResolution res = oracle::resolve_convention(p13);
    CHECK(res.convention == Convention::swapped);
    CHECK(res.radius_x == 2);
    CHECK(res.radius_z == 1);

    // swapped radii build cleanly
    CHECK_NOTHROW(SyndromeTable(p13, Branch::x_errors, res.radius_x));
    CHECK_NOTHROW(SyndromeTable(p13, Branch::z_errors, res.radius_z));
}

TEST_CASE("forged distance labels are caught") {
    // claim the 13-qubit matrices form a 5/5 code; no pairing supports that
    const css::CssCode& p13 = reg().at("punct-13");
    const css::CssCode forged = css::make_css_trusted("forged-13", p13.h1, p13.h2, 5, 5);
    CHECK_THROWS_AS(oracle::resolve_convention(forged), DistanceContradiction);
    CHECK_THROWS_WITH_AS(oracle::resolve_convention(forged),
                         doctest::Contains("DistanceContradiction"), DistanceContradiction);
}

TEST_CASE("table sizes") {
    const SyndromeTable p8x(reg().at("punct-8"), Branch::x_errors, 1);
    CHECK(p8x.errors_enumerated() == 9);  // zero + 8 single flips
    // the bit flip on qubit 8 is itself a stabilizer, so it shares the zero
    // syndrome; 8 distinct syndromes fill the whole 3-row table
    CHECK(p8x.entries() == 8);

    const SyndromeTable b17(reg().at("base-17"), Branch::x_errors, 2);
    CHECK(b17.errors_enumerated() == 154);  // 1 + 17 + C(17,2)
    CHECK(b17.entries() == 116);            // weight-4 stabilizers fold pairs together

    const SyndromeTable steane(reg().at("steane-7"), Branch::x_errors, 1);
    CHECK(steane.errors_enumerated() == 8);
    CHECK(steane.entries() == 8);  // Hamming columns are distinct and nonzero
    for (std::size_t q = 0; q < 7; ++q) {
        const std::uint32_t s = steane.syndrome_of(std::uint32_t{1} << q);
        CHECK(s != 0);
        CHECK(steane.decode(s).has_value());
    }
}

TEST_CASE("threshold enumeration reproduces the binomial tail") {
    const double qs[] = {0.001, 0.01, 0.05, 0.1, 1.0 / 3.0};
    for (const css::CssCode& code : reg().codes()) {
        for (double q : qs) {
            const double ex = oracle::exact_branch_error(code, Branch::x_errors, q,
                                                         DecodeMode::threshold, code.tx);
            CHECK(std::abs(ex - (1.0 - rel::branch_success(code.n, code.tx, q))) < 1e-12);
            const double ez = oracle::exact_branch_error(code, Branch::z_errors, q,
                                                         DecodeMode::threshold, code.tz);
            CHECK(std::abs(ez - (1.0 - rel::branch_success(code.n, code.tz, q))) < 1e-12);
        }
    }
}

TEST_CASE("lookup never does worse than the threshold model at equal radius") {
    const double qs[] = {0.01, 0.05, 0.1, 0.3, 0.49};
    for (const css::CssCode& code : reg().codes()) {
        const oracle::ConventionResolution res = oracle::resolve_convention(code);
        for (double q : qs) {
            for (Branch branch : {Branch::x_errors, Branch::z_errors}) {
                const std::size_t radius =
                    branch == Branch::x_errors ? res.radius_x : res.radius_z;
                const double lk =
                    oracle::exact_branch_error(code, branch, q, DecodeMode::lookup, radius);
                const double th =
                    oracle::exact_branch_error(code, branch, q, DecodeMode::threshold, radius);
                CHECK(lk <= th + 1e-15);
            }
        }
    }
}

TEST_CASE("branch errors vanish on a perfect channel") {
    for (const css::CssCode& code : reg().codes()) {
        CHECK(oracle::exact_branch_error(code, Branch::x_errors, 0.0, DecodeMode::threshold,
                                         code.tx) == 0.0);
        CHECK(oracle::exact_branch_error(code, Branch::x_errors, 0.0, DecodeMode::lookup,
                                         code.tx) == 0.0);
    }
}

TEST_CASE("joint evaluation agrees with 4^n brute force") {
    for (const char* id : {"steane-7", "punct-8"}) {
        const css::CssCode& code = reg().at(id);
        const oracle::ConventionResolution res = oracle::resolve_convention(code);
        const SyndromeTable xt(code, Branch::x_errors, res.radius_x);
        const SyndromeTable zt(code, Branch::z_errors, res.radius_z);
        for (double f0 : {0.85, 0.95}) {
            for (unsigned r : {0u, 2u}) {
                const pur::PauliChannel ch = pur::to_channel(pur::purify(f0, r));
                const double dp = oracle::exact_joint_lookup_error(code, ch, xt, zt);
                const double brute = brute_joint(code, ch, xt, zt);
                CHECK(dp == doctest::Approx(brute).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("joint evaluation factorizes when the branches are independent") {
    // per-qubit independence of the two branch indicators means
    // pY = qx*qz, pX = qx(1-qz), pZ = qz(1-qx)
    const double qx = 0.02;
    const double qz = 0.07;
    const pur::PauliChannel ch{qx * (1.0 - qz), qx * qz, qz * (1.0 - qx), qx, qz};
    for (const char* id : {"steane-7", "punct-13", "base-17"}) {
        const css::CssCode& code = reg().at(id);
        const oracle::ConventionResolution res = oracle::resolve_convention(code);
        const SyndromeTable xt(code, Branch::x_errors, res.radius_x);
        const SyndromeTable zt(code, Branch::z_errors, res.radius_z);
        const double joint = oracle::exact_joint_lookup_error(code, ch, xt, zt);
        const double ex =
            oracle::exact_branch_error(code, Branch::x_errors, ch.qx, DecodeMode::lookup,
                                       res.radius_x);
        const double ez =
            oracle::exact_branch_error(code, Branch::z_errors, ch.qz, DecodeMode::lookup,
                                       res.radius_z);
        CHECK(joint == doctest::Approx(1.0 - (1.0 - ex) * (1.0 - ez)).epsilon(1e-12));
    }
}

TEST_CASE("report invariants at the validation points") {
    for (const oracle::PointSpec& pt : oracle::default_validation_points()) {
        for (const css::CssCode& code : reg().codes()) {
            const oracle::OracleReport rep = oracle::run_point(code, pt.f0, pt.r, 2000, 1, 1);
            CHECK(rep.exact_lookup <= rep.exact_threshold + 1e-15);
            if (rep.convention == Convention::direct) {
                CHECK(std::abs(rep.analytic_pl - rep.exact_threshold) < 1e-12);
            }
        }
    }
}

TEST_CASE("monte carlo against exact values") {
    const css::CssCode& code = reg().at("punct-8");
    const pur::PauliChannel ch = pur::to_channel(pur::purify(0.9, 0));
    const oracle::ConventionResolution res = oracle::resolve_convention(code);
    const SyndromeTable xt(code, Branch::x_errors, res.radius_x);
    const SyndromeTable zt(code, Branch::z_errors, res.radius_z);

    const double exact = oracle::exact_joint_lookup_error(code, ch, xt, zt);
    const oracle::McResult mc = oracle::mc_logical_error(code, ch, xt, zt, 200000, 1, 1);
    const double sigma = std::sqrt(exact * (1.0 - exact) / 200000.0);
    CHECK(std::abs(mc.mean - exact) < 4.0 * sigma);

    // the factorized product overstates the joint failure here: both branch
    // failures fire together whenever two Y errors land
    const double ex = oracle::exact_branch_error(code, Branch::x_errors, ch.qx,
                                                 DecodeMode::lookup, res.radius_x);
    const double ez = oracle::exact_branch_error(code, Branch::z_errors, ch.qz,
                                                 DecodeMode::lookup, res.radius_z);
    CHECK(exact < 1.0 - (1.0 - ex) * (1.0 - ez));
}

TEST_CASE("monte carlo sanity at heavy depolarizing") {
    // werner(0.25) is the maximally mixed pair: each branch decodes at chance
    // (one success coset of 8 in each 16-element syndrome class), and the
    // branches are exactly independent there, so pL = 1 - (1/2)^2 = 3/4.
    const css::CssCode& code = reg().at("steane-7");
    const pur::PauliChannel ch = pur::to_channel(pur::werner(0.25));
    const SyndromeTable xt(code, Branch::x_errors, code.tx);
    const SyndromeTable zt(code, Branch::z_errors, code.tz);
    const double exact = oracle::exact_joint_lookup_error(code, ch, xt, zt);
    CHECK(exact == doctest::Approx(0.75).epsilon(1e-12));
    const oracle::McResult mc = oracle::mc_logical_error(code, ch, xt, zt, 100000, 7, 1);
    const double sigma = std::sqrt(exact * (1.0 - exact) / 100000.0);
    CHECK(std::abs(mc.mean - exact) < 4.0 * sigma);
}

TEST_CASE("monte carlo on a perfect channel never fails") {
    const css::CssCode& code = reg().at("punct-8");
    const pur::PauliChannel ch = pur::to_channel(pur::werner(1.0));
    const SyndromeTable xt(code, Branch::x_errors, code.tx);
    const SyndromeTable zt(code, Branch::z_errors, code.tz);
    const oracle::McResult mc = oracle::mc_logical_error(code, ch, xt, zt, 20000, 5, 2);
    CHECK(mc.failures == 0);
    CHECK(mc.mean == 0.0);
}

TEST_CASE("monte carlo determinism") {
    const css::CssCode& code = reg().at("steane-7");
    const pur::PauliChannel ch = pur::to_channel(pur::purify(0.9, 1));
    const SyndromeTable xt(code, Branch::x_errors, code.tx);
    const SyndromeTable zt(code, Branch::z_errors, code.tz);

    const oracle::McResult a = oracle::mc_logical_error(code, ch, xt, zt, 50000, 3, 4);
    const oracle::McResult b = oracle::mc_logical_error(code, ch, xt, zt, 50000, 3, 4);
    CHECK(a.failures == b.failures);
    CHECK(a.mean == b.mean);

    const oracle::McResult c = oracle::mc_logical_error(code, ch, xt, zt, 50000, 4, 4);
    CHECK(a.failures != c.failures);  // different seed, different stream

    CHECK_THROWS_AS(oracle::mc_logical_error(code, ch, xt, zt, 0, 1, 1), OutOfRange);
}

TEST_CASE("uncoded reduces to the factorized baseline") {
    const css::CssCode& uncoded = reg().at("uncoded");
    const pur::PauliChannel ch = pur::to_channel(pur::purify(0.9, 1));
    const SyndromeTable xt(uncoded, Branch::x_errors, 0);
    const SyndromeTable zt(uncoded, Branch::z_errors, 0);
    const double joint = oracle::exact_joint_lookup_error(uncoded, ch, xt, zt);
    // any error at all is a logical failure on one qubit
    CHECK(joint == doctest::Approx(ch.px + ch.py + ch.pz).epsilon(1e-14));
}

}  // TEST_SUITE
