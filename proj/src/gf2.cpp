#include "telecode/gf2.hpp"

#include <bit>
#include <sstream>

namespace telecode::gf2 {

namespace {

std::size_t words_for(std::size_t bits) {
    return (bits + 63) / 64;
}

void check_index(std::size_t i, std::size_t limit, const char* what) {
    if (i >= limit) {
        throw IndexError(std::string(what) + " index " + std::to_string(i) +
                         " out of range [0, " + std::to_string(limit) + ")");
    }
}

std::size_t weight_of(std::span<const std::uint64_t> words) {
    std::size_t w = 0;
    for (std::uint64_t word : words) {
        w += static_cast<std::size_t>(std::popcount(word));
    }
    return w;
}

bool parity_of_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc ^= a[i] & b[i];
    }
    return (std::popcount(acc) & 1) != 0;
}

}  // namespace

BinaryVector::BinaryVector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

BinaryVector BinaryVector::from_string(std::string_view bits) {
    BinaryVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw ParseError("vector literal: unexpected character '" + std::string(1, bits[i]) + "'");
        }
    }
    return v;
}

bool BinaryVector::get(std::size_t i) const {
    check_index(i, len_, "vector");
    return (words_[i / 64] >> (i % 64)) & 1;
}

void BinaryVector::set(std::size_t i, bool value) {
    check_index(i, len_, "vector");
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
        words_[i / 64] |= mask;
    } else {
        words_[i / 64] &= ~mask;
    }
}

std::size_t BinaryVector::weight() const {
    return weight_of(words_);
}

bool BinaryVector::is_zero() const {
    for (std::uint64_t w : words_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

BinaryVector& BinaryVector::operator^=(const BinaryVector& other) {
    if (other.len_ != len_) {
        throw DimensionMismatch("vector xor: lengths " + std::to_string(len_) + " vs " +
                                std::to_string(other.len_));
    }
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

bool BinaryVector::dot(const BinaryVector& a, const BinaryVector& b) {
    if (a.len_ != b.len_) {
        throw DimensionMismatch("vector dot: lengths " + std::to_string(a.len_) + " vs " +
                                std::to_string(b.len_));
    }
    return parity_of_and(a.words_, b.words_);
}

std::string BinaryVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if ((words_[i / 64] >> (i % 64)) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(words_for(cols)), words_(rows * wpr_, 0) {}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
    BinaryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) {
        throw ParseError("matrix literal: no rows");
    }
    const std::size_t cols = rows[0].size();
    if (cols == 0) {
        throw ParseError("matrix literal: empty row");
    }
    BinaryMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw ParseError("matrix literal: ragged row " + std::to_string(r + 1) + " (length " +
                             std::to_string(rows[r].size()) + ", expected " + std::to_string(cols) + ")");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (rows[r][c] == '1') {
                m.set(r, c, true);
            } else if (rows[r][c] != '0') {
                throw ParseError("matrix literal: unexpected character '" + std::string(1, rows[r][c]) + "'");
            }
        }
    }
    return m;
}

BinaryMatrix BinaryMatrix::from_row_vectors(const std::vector<BinaryVector>& rows) {
    if (rows.empty()) {
        throw ParseError("matrix from row vectors: no rows");
    }
    BinaryMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        m.set_row(r, rows[r]);
    }
    return m;
}

bool BinaryMatrix::get(std::size_t r, std::size_t c) const {
    check_index(r, rows_, "row");
    check_index(c, cols_, "column");
    return (words_[r * wpr_ + c / 64] >> (c % 64)) & 1;
}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool value) {
    check_index(r, rows_, "row");
    check_index(c, cols_, "column");
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    if (value) {
        words_[r * wpr_ + c / 64] |= mask;
    } else {
        words_[r * wpr_ + c / 64] &= ~mask;
    }
}

BinaryVector BinaryMatrix::row(std::size_t r) const {
    check_index(r, rows_, "row");
    BinaryVector v(cols_);
    auto dst = v.words();
    for (std::size_t i = 0; i < wpr_; ++i) {
        dst[i] = words_[r * wpr_ + i];
    }
    return v;
}

void BinaryMatrix::set_row(std::size_t r, const BinaryVector& v) {
    check_index(r, rows_, "row");
    if (v.size() != cols_) {
        throw DimensionMismatch("set_row: vector length " + std::to_string(v.size()) +
                                " vs columns " + std::to_string(cols_));
    }
    auto src = v.words();
    for (std::size_t i = 0; i < wpr_; ++i) {
        words_[r * wpr_ + i] = src[i];
    }
}

void BinaryMatrix::xor_row(std::size_t dst, std::size_t src) {
    check_index(dst, rows_, "row");
    check_index(src, rows_, "row");
    for (std::size_t i = 0; i < wpr_; ++i) {
        words_[dst * wpr_ + i] ^= words_[src * wpr_ + i];
    }
}

void BinaryMatrix::swap_rows(std::size_t a, std::size_t b) {
    check_index(a, rows_, "row");
    check_index(b, rows_, "row");
    if (a == b) {
        return;
    }
    for (std::size_t i = 0; i < wpr_; ++i) {
        std::swap(words_[a * wpr_ + i], words_[b * wpr_ + i]);
    }
}

BinaryMatrix BinaryMatrix::transpose() const {
    BinaryMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if ((words_[r * wpr_ + c / 64] >> (c % 64)) & 1) {
                t.set(c, r, true);
            }
        }
    }
    return t;
}

BinaryMatrix BinaryMatrix::multiply(const BinaryMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw DimensionMismatch("matrix multiply: " + std::to_string(cols_) + " columns vs " +
                                std::to_string(rhs.rows_) + " rows");
    }
    BinaryMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            if ((words_[r * wpr_ + k / 64] >> (k % 64)) & 1) {
                for (std::size_t i = 0; i < out.wpr_; ++i) {
                    out.words_[r * out.wpr_ + i] ^= rhs.words_[k * rhs.wpr_ + i];
                }
            }
        }
    }
    return out;
}

bool BinaryMatrix::is_zero() const {
    for (std::uint64_t w : words_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

BinaryMatrix BinaryMatrix::without_row(std::size_t r) const {
    check_index(r, rows_, "row");
    BinaryMatrix out(rows_ - 1, cols_);
    std::size_t dst = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) {
            continue;
        }
        for (std::size_t w = 0; w < wpr_; ++w) {
            out.words_[dst * wpr_ + w] = words_[i * wpr_ + w];
        }
        ++dst;
    }
    return out;
}

BinaryMatrix BinaryMatrix::without_column(std::size_t c) const {
    check_index(c, cols_, "column");
    BinaryMatrix out(rows_, cols_ - 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::size_t dst = 0;
        for (std::size_t i = 0; i < cols_; ++i) {
            if (i == c) {
                continue;
            }
            if ((words_[r * wpr_ + i / 64] >> (i % 64)) & 1) {
                out.set(r, dst, true);
            }
            ++dst;
        }
    }
    return out;
}

std::string BinaryMatrix::to_string() const {
    std::string out;
    for (std::size_t r = 0; r < rows_; ++r) {
        out += row(r).to_string();
        if (r + 1 < rows_) {
            out += '\n';
        }
    }
    return out;
}

std::span<const std::uint64_t> BinaryMatrix::row_words(std::size_t r) const {
    check_index(r, rows_, "row");
    return {words_.data() + r * wpr_, wpr_};
}

std::span<std::uint64_t> BinaryMatrix::row_words(std::size_t r) {
    check_index(r, rows_, "row");
    return {words_.data() + r * wpr_, wpr_};
}

RrefResult rref(const BinaryMatrix& m) {
    BinaryMatrix work = m;
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < work.cols() && pivot_row < work.rows(); ++c) {
        std::size_t found = work.rows();
        for (std::size_t r = pivot_row; r < work.rows(); ++r) {
            if (work.get(r, c)) {
                found = r;
                break;
            }
        }
        if (found == work.rows()) {
            continue;
        }
        work.swap_rows(pivot_row, found);
        for (std::size_t r = 0; r < work.rows(); ++r) {
            if (r != pivot_row && work.get(r, c)) {
                work.xor_row(r, pivot_row);
            }
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    return {std::move(work), std::move(pivots)};
}

std::size_t rank(const BinaryMatrix& m) {
    return rref(m).pivot_cols.size();
}

bool in_rowspace(const BinaryVector& v, const BinaryMatrix& m) {
    return RowspaceOracle(m).contains(v);
}

RowspaceOracle::RowspaceOracle(const BinaryMatrix& m) : cols_(m.cols()) {
    RrefResult r = rref(m);
    pivots_ = std::move(r.pivot_cols);
    BinaryMatrix reduced(pivots_.size(), m.cols());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        reduced.set_row(i, r.matrix.row(i));
    }
    rref_ = std::move(reduced);
}

bool RowspaceOracle::contains(const BinaryVector& v) const {
    if (v.size() != cols_) {
        throw DimensionMismatch("in_rowspace: vector length " + std::to_string(v.size()) +
                                " vs columns " + std::to_string(cols_));
    }
    BinaryVector residual = v;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        if (residual.get(pivots_[i])) {
            auto dst = residual.words();
            auto src = rref_.row_words(i);
            for (std::size_t w = 0; w < src.size(); ++w) {
                dst[w] ^= src[w];
            }
        }
    }
    return residual.is_zero();
}

std::vector<BinaryVector> kernel_basis(const BinaryMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<BinaryVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        BinaryVector v(m.cols());
        v.set(free, true);
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
            if (r.matrix.get(i, free)) {
                v.set(r.pivot_cols[i], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<BinaryVector> enumerate_span(std::span<const BinaryVector> basis) {
    std::vector<BinaryVector> out;
    out.reserve(std::size_t{1} << basis.size());
    for_each_in_span(basis, [&](const BinaryVector& v) { out.push_back(v); });
    return out;
}

BinaryVector syndrome(const BinaryMatrix& h, const BinaryVector& e) {
    if (e.size() != h.cols()) {
        throw DimensionMismatch("syndrome: error length " + std::to_string(e.size()) +
                                " vs columns " + std::to_string(h.cols()));
    }
    BinaryVector s(h.rows());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        if (parity_of_and(h.row_words(r), e.words())) {
            s.set(r, true);
        }
    }
    return s;
}

BinaryMatrix parse_matrix(std::string_view text) {
    std::vector<std::string> rows;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        rows.push_back(token);
    }
    return BinaryMatrix::from_rows(rows);
}

}  // namespace telecode::gf2
