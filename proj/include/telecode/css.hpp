#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "telecode/gf2.hpp"

// CSS codes built from two classical parity checks h1 (X-stabilizer block)
// and h2 (Z-stabilizer block) with h1 * h2^T = 0. Parameters are always
// recomputed from the matrices by exhaustive enumeration, never trusted
// from labels (except through make_css_trusted, used for fixture injection).

namespace telecode::css {

struct CssCode {
    std::string id;
    std::size_t n = 0;
    gf2::BinaryMatrix h1;  // rows are X-stabilizer support vectors
    gf2::BinaryMatrix h2;  // rows are Z-stabilizer support vectors
    std::size_t k = 0;
    std::size_t dx = 0;
    std::size_t dz = 0;
    std::size_t tx = 0;
    std::size_t tz = 0;
};

struct Distances {
    std::size_t dx;
    std::size_t dz;
};

/// dx = min weight of ker(h1) \ rowspace(h2), dz = min weight of
/// ker(h2) \ rowspace(h1), both by exhaustive enumeration of the kernels.
/// Throws EmptyCodeSet when a set difference is empty (k = 0).
Distances distances(const gf2::BinaryMatrix& h1, const gf2::BinaryMatrix& h2);

/// Validates the CSS condition, computes k and both distances.
CssCode make_css(std::string id, gf2::BinaryMatrix h1, gf2::BinaryMatrix h2);

/// Validates the CSS condition and k but takes the distance labels on faith.
/// Intended for fixture files; the syndrome-table builder catches lies.
CssCode make_css_trusted(std::string id, gf2::BinaryMatrix h1, gf2::BinaryMatrix h2,
                         std::size_t dx, std::size_t dz);

class CodeRegistry {
public:
    explicit CodeRegistry(std::vector<CssCode> codes);

    const std::vector<CssCode>& codes() const { return codes_; }
    const CssCode* find(std::string_view id) const;
    const CssCode& at(std::string_view id) const;  // throws RegistryError

private:
    std::vector<CssCode> codes_;  // ordered by n ascending
};

/// The built-in codes, shortest first: uncoded (n = 1, no checks),
/// steane-7, punct-8, punct-13, base-17. Construction recomputes every
/// parameter and fails hard if a recomputed value disagrees with its label.
const CodeRegistry& builtin_registry();

/// True iff both stabilizer blocks span the same row spaces (equal RREF).
bool same_rowspaces(const CssCode& a, const CssCode& b);

/// Key/value dump: id, n, k, dX, dZ, tX, tZ plus both matrices as row strings.
std::string dump_code(const CssCode& code);

/// Parses a concatenation of dump_code blocks. With trust_labels the dX/dZ
/// lines are taken verbatim instead of recomputed.
CodeRegistry load_registry(std::istream& in, bool trust_labels);

}  // namespace telecode::css
