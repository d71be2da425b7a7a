#include <doctest.h>

#include <random>
#include <set>

#include "telecode/gf2.hpp"

using namespace telecode;
using gf2::BinaryMatrix;
using gf2::BinaryVector;

namespace {

BinaryMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    BinaryMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.set(r, c, (rng() & 1) != 0);
        }
    }
    return m;
}

const std::vector<std::string> kBase17 = {
    "11011010101000010", "01100011001100110", "00111000000000100", "00010000000001110",
    "00001110010011101", "00000101000110000", "00000011111011010", "00000001010100001",
};

const std::vector<std::string> kPunct13H2 = {
    "0110100000010", "1000110100110", "1110000000100", "0100000001110",
    "0011101011101", "0001010110000", "0000111011010",
};

}  // namespace

TEST_SUITE("gf2") {

TEST_CASE("rref collapses duplicate rows") {
    const BinaryMatrix m = BinaryMatrix::from_rows({"11", "11"});
    const gf2::RrefResult r = gf2::rref(m);
    CHECK(r.matrix == BinaryMatrix::from_rows({"11", "00"}));
    CHECK(r.pivot_cols == std::vector<std::size_t>{0});
}

TEST_CASE("rref fixes the identity") {
    const BinaryMatrix id = BinaryMatrix::identity(3);
    const gf2::RrefResult r = gf2::rref(id);
    CHECK(r.matrix == id);
    CHECK(r.pivot_cols == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("rref is idempotent on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const BinaryMatrix m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 12);
        const gf2::RrefResult once = gf2::rref(m);
        const gf2::RrefResult twice = gf2::rref(once.matrix);
        CHECK(once.matrix == twice.matrix);
        CHECK(once.pivot_cols == twice.pivot_cols);
    }
}

TEST_CASE("rank basics") {
    CHECK(gf2::rank(BinaryMatrix(2, 5)) == 0);
    CHECK(gf2::rank(BinaryMatrix::identity(4)) == 4);
}

TEST_CASE("rank of the paper matrices") {
    CHECK(gf2::rank(BinaryMatrix::from_rows(kBase17)) == 8);
    CHECK(gf2::rank(BinaryMatrix::from_rows(kPunct13H2)) == 7);
}

TEST_CASE("in_rowspace") {
    const BinaryMatrix m = BinaryMatrix::from_rows({"010", "001"});
    CHECK(gf2::in_rowspace(BinaryVector(3), m));
    CHECK(gf2::in_rowspace(m.row(0), m));
    CHECK(gf2::in_rowspace(m.row(0) ^ m.row(1), m));
    CHECK_FALSE(gf2::in_rowspace(BinaryVector::from_string("100"), m));
    CHECK_THROWS_AS(gf2::in_rowspace(BinaryVector(4), m), DimensionMismatch);
}

TEST_CASE("kernel basis sizes") {
    CHECK(gf2::kernel_basis(BinaryMatrix::identity(3)).empty());
    CHECK(gf2::kernel_basis(BinaryMatrix(1, 3)).size() == 3);
    CHECK(gf2::kernel_basis(BinaryMatrix::from_rows(kBase17)).size() == 9);
}

TEST_CASE("kernel vectors have zero syndrome") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const BinaryMatrix m = random_matrix(rng, 1 + rng() % 6, 2 + rng() % 10);
        for (const BinaryVector& b : gf2::kernel_basis(m)) {
            CHECK(gf2::syndrome(m, b).is_zero());
        }
        CHECK(gf2::rank(m) + gf2::kernel_basis(m).size() == m.cols());
    }
}

TEST_CASE("enumerate_span") {
    CHECK(gf2::enumerate_span({}) == std::vector<BinaryVector>{BinaryVector(0)});

    const std::vector<BinaryVector> one = {BinaryVector::from_string("101")};
    const auto two = gf2::enumerate_span(one);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == BinaryVector(3));
    CHECK(two[1] == one[0]);

    const auto basis = gf2::kernel_basis(BinaryMatrix::from_rows(kBase17));
    REQUIRE(basis.size() == 9);
    std::set<std::string> seen;
    gf2::for_each_in_span(basis, [&](const BinaryVector& v) { seen.insert(v.to_string()); });
    CHECK(seen.size() == 512);
}

TEST_CASE("span members lie in the rowspace") {
    std::mt19937_64 rng(13);
    const BinaryMatrix m = random_matrix(rng, 5, 9);
    std::vector<BinaryVector> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(m.row(r));
    }
    gf2::for_each_in_span(rows, [&](const BinaryVector& v) { CHECK(gf2::in_rowspace(v, m)); });
}

TEST_CASE("enumeration guard") {
    std::vector<BinaryVector> basis(gf2::kSpanGuardBits + 1, BinaryVector(40));
    CHECK_THROWS_AS(gf2::for_each_in_span(basis, [](const BinaryVector&) {}), GuardExceeded);
}

TEST_CASE("syndrome") {
    const BinaryMatrix h = BinaryMatrix::from_rows(kPunct13H2);
    CHECK(gf2::syndrome(h, BinaryVector(13)).is_zero());

    BinaryVector e(13);
    e.set(2, true);  // weight-1 error at (1-based) index 3
    BinaryVector expected(7);
    for (std::size_t r = 0; r < 7; ++r) {
        expected.set(r, h.get(r, 2));
    }
    CHECK(gf2::syndrome(h, e) == expected);

    const BinaryMatrix id = BinaryMatrix::identity(5);
    BinaryVector v = BinaryVector::from_string("10110");
    CHECK(gf2::syndrome(id, v) == v);
    CHECK_THROWS_AS(gf2::syndrome(h, BinaryVector(12)), DimensionMismatch);
}

TEST_CASE("matrix literal parsing") {
    const BinaryMatrix m = gf2::parse_matrix("110\n011\n");
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.get(1, 2));
    CHECK_THROWS_AS(gf2::parse_matrix("110\n01"), ParseError);
    CHECK_THROWS_AS(gf2::parse_matrix("1x0"), ParseError);
    CHECK(gf2::parse_matrix(m.to_string()) == m);
}

TEST_CASE("index validation") {
    BinaryMatrix m(2, 3);
    CHECK_THROWS_AS(m.get(2, 0), IndexError);
    CHECK_THROWS_AS(m.get(0, 3), IndexError);
    BinaryVector v(4);
    CHECK_THROWS_AS(v.get(4), IndexError);
    CHECK_THROWS_AS(v.set(5, true), IndexError);
}

TEST_CASE("weight and equality ignore nothing but logical bits") {
    BinaryVector v(70);
    v.set(0, true);
    v.set(69, true);
    CHECK(v.weight() == 2);
    BinaryVector w(70);
    w.set(69, true);
    w.set(0, true);
    CHECK(v == w);
    w.set(0, false);
    CHECK(v != w);
    CHECK((v ^ w) == [] {
        BinaryVector d(70);
        d.set(0, true);
        return d;
    }());
}

}  // TEST_SUITE
