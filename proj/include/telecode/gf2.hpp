#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "telecode/errors.hpp"

// Dense exact linear algebra over GF(2).
//
// Bits are packed into 64-bit words, least-significant bit first: entry j of a
// row lives in word j/64 at bit j%64. Padding bits past the logical length are
// kept zero at all times, so equality and weight operate on whole words.
// All indices in this API are 0-based; 1-based numbering is applied only at
// the CLI / report boundary.

namespace telecode::gf2 {

inline constexpr std::size_t kSpanGuardBits = 24;

class BinaryVector {
public:
    BinaryVector() = default;
    explicit BinaryVector(std::size_t len);

    /// Parses a string of '0'/'1' characters, leftmost character = entry 0.
    static BinaryVector from_string(std::string_view bits);

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const;
    void set(std::size_t i, bool value);

    std::size_t weight() const;
    bool is_zero() const;

    BinaryVector& operator^=(const BinaryVector& other);
    friend BinaryVector operator^(BinaryVector lhs, const BinaryVector& rhs) {
        lhs ^= rhs;
        return lhs;
    }
    bool operator==(const BinaryVector&) const = default;

    /// Inner product mod 2.
    static bool dot(const BinaryVector& a, const BinaryVector& b);

    std::string to_string() const;
    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols);

    static BinaryMatrix identity(std::size_t n);
    /// One string of '0'/'1' per row; rejects ragged or empty-width input.
    static BinaryMatrix from_rows(const std::vector<std::string>& rows);
    static BinaryMatrix from_row_vectors(const std::vector<BinaryVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value);

    BinaryVector row(std::size_t r) const;
    void set_row(std::size_t r, const BinaryVector& v);
    /// dst ^= src, rowwise.
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    BinaryMatrix transpose() const;
    /// Matrix product over GF(2).
    BinaryMatrix multiply(const BinaryMatrix& rhs) const;
    bool is_zero() const;

    BinaryMatrix without_row(std::size_t r) const;
    BinaryMatrix without_column(std::size_t c) const;

    bool operator==(const BinaryMatrix&) const = default;

    /// Rows rendered as '0'/'1' strings, one per line.
    std::string to_string() const;

    std::span<const std::uint64_t> row_words(std::size_t r) const;
    std::span<std::uint64_t> row_words(std::size_t r);
    std::size_t words_per_row() const { return wpr_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

struct RrefResult {
    BinaryMatrix matrix;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form; preserves the row space.
RrefResult rref(const BinaryMatrix& m);

std::size_t rank(const BinaryMatrix& m);

/// True iff v is a GF(2) combination of the rows of m.
bool in_rowspace(const BinaryVector& v, const BinaryMatrix& m);

/// Precomputed RREF for repeated membership queries against one row space.
class RowspaceOracle {
public:
    explicit RowspaceOracle(const BinaryMatrix& m);
    bool contains(const BinaryVector& v) const;
    std::size_t rank() const { return rref_.rows(); }
    std::size_t cols() const { return cols_; }

private:
    BinaryMatrix rref_;  // nonzero rows only
    std::vector<std::size_t> pivots_;
    std::size_t cols_;
};

/// Basis of ker(m); size = cols - rank.
std::vector<BinaryVector> kernel_basis(const BinaryMatrix& m);

/// Visits every vector in the span of `basis` exactly once (Gray-code order,
/// starting from zero). Throws GuardExceeded if basis.size() > kSpanGuardBits.
template <typename Fn>
void for_each_in_span(std::span<const BinaryVector> basis, Fn&& fn) {
    if (basis.size() > kSpanGuardBits) {
        throw GuardExceeded("enumerate_span: basis size " + std::to_string(basis.size()) +
                            " exceeds guard of " + std::to_string(kSpanGuardBits));
    }
    const std::size_t len = basis.empty() ? 0 : basis[0].size();
    BinaryVector current(len);
    fn(static_cast<const BinaryVector&>(current));
    const std::uint64_t total = std::uint64_t{1} << basis.size();
    for (std::uint64_t i = 1; i < total; ++i) {
        const int flip = __builtin_ctzll(i);
        current ^= basis[static_cast<std::size_t>(flip)];
        fn(static_cast<const BinaryVector&>(current));
    }
}

/// Materialized span; prefer for_each_in_span for anything large.
std::vector<BinaryVector> enumerate_span(std::span<const BinaryVector> basis);

/// h * e over GF(2); length = rows(h).
BinaryVector syndrome(const BinaryMatrix& h, const BinaryVector& e);

/// Parses whitespace-separated row strings (the fixture/matrix literal format).
BinaryMatrix parse_matrix(std::string_view text);

}  // namespace telecode::gf2
