#include "telecode/css.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <sstream>

namespace telecode::css {

namespace {

// H1 = H2 of the distance-5/5 base code (the 4.8.8 color code on 17 qubits).
const std::vector<std::string> kBase17Rows = {
    "11011010101000010",
    "01100011001100110",
    "00111000000000100",
    "00010000000001110",
    "00001110010011101",
    "00000101000110000",
    "00000011111011010",
    "00000001010100001",
};

// Four Z-type punctures of the base code (qubits 1, 2, 9, 11 removed).
const std::vector<std::string> kPunct13H1 = {
    "1110000000100",
    "0100000001110",
    "0011101011101",
    "0001010110000",
    "0000011100001",
};
const std::vector<std::string> kPunct13H2 = {
    "0110100000010",
    "1000110100110",
    "1110000000100",
    "0100000001110",
    "0011101011101",
    "0001010110000",
    "0000111011010",
};

// Five further X-type punctures (original qubits 6, 8, 10, 12, 13 removed).
const std::vector<std::string> kPunct8H1 = {
    "11100100",
    "01001110",
    "00111101",
    "00000001",
};
const std::vector<std::string> kPunct8H2 = {
    "01110010",
    "01001110",
    "11100100",
};

// [7,4] Hamming parity check; used for both blocks of the Steane code.
const std::vector<std::string> kSteaneRows = {
    "1010101",
    "0110011",
    "0001111",
};

void check_css_pair(const gf2::BinaryMatrix& h1, const gf2::BinaryMatrix& h2) {
    if (h1.cols() != h2.cols()) {
        throw DimensionMismatch("make_css: h1 has " + std::to_string(h1.cols()) +
                                " columns, h2 has " + std::to_string(h2.cols()));
    }
    for (std::size_t i = 0; i < h1.rows(); ++i) {
        const gf2::BinaryVector a = h1.row(i);
        for (std::size_t j = 0; j < h2.rows(); ++j) {
            if (gf2::BinaryVector::dot(a, h2.row(j))) {
                throw CssViolation("h1 row " + std::to_string(i + 1) +
                                   " is not orthogonal to h2 row " + std::to_string(j + 1));
            }
        }
    }
}

std::size_t compute_k(const gf2::BinaryMatrix& h1, const gf2::BinaryMatrix& h2) {
    const std::size_t n = h1.cols();
    const std::size_t r1 = gf2::rank(h1);
    const std::size_t r2 = gf2::rank(h2);
    if (r1 + r2 > n) {
        throw CssViolation("rank(h1) + rank(h2) = " + std::to_string(r1 + r2) +
                           " exceeds n = " + std::to_string(n));
    }
    return n - r1 - r2;
}

std::size_t min_weight_outside(const gf2::BinaryMatrix& kernel_of,
                               const gf2::BinaryMatrix& dual_rows) {
    const std::vector<gf2::BinaryVector> basis = gf2::kernel_basis(kernel_of);
    const gf2::RowspaceOracle dual(dual_rows);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    gf2::for_each_in_span(basis, [&](const gf2::BinaryVector& v) {
        if (v.is_zero()) {
            return;
        }
        const std::size_t w = v.weight();
        if (w < best && !dual.contains(v)) {
            best = w;
        }
    });
    if (best == std::numeric_limits<std::size_t>::max()) {
        throw EmptyCodeSet("distance undefined: every codeword lies in the dual (k = 0)");
    }
    return best;
}

CssCode finish(std::string id, gf2::BinaryMatrix h1, gf2::BinaryMatrix h2,
               std::size_t dx, std::size_t dz) {
    CssCode code;
    code.id = std::move(id);
    code.n = h1.cols();
    code.k = compute_k(h1, h2);
    code.h1 = std::move(h1);
    code.h2 = std::move(h2);
    code.dx = dx;
    code.dz = dz;
    code.tx = (dx - 1) / 2;
    code.tz = (dz - 1) / 2;
    return code;
}

CssCode make_labeled(const std::string& id, const std::vector<std::string>& h1_rows,
                     const std::vector<std::string>& h2_rows, std::size_t n, std::size_t k,
                     std::size_t dx, std::size_t dz) {
    CssCode code = make_css(id, gf2::BinaryMatrix::from_rows(h1_rows),
                            gf2::BinaryMatrix::from_rows(h2_rows));
    if (code.n != n || code.k != k || code.dx != dx || code.dz != dz) {
        throw RegistryError("registry code " + id + ": recomputed [[" + std::to_string(code.n) +
                            "," + std::to_string(code.k) + "," + std::to_string(code.dx) + "/" +
                            std::to_string(code.dz) + "]] disagrees with label [[" +
                            std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(dx) +
                            "/" + std::to_string(dz) + "]]");
    }
    return code;
}

CssCode make_uncoded() {
    // A single unchecked qubit. ker(h1) = {0,1}, rowspace(h2) = {0}, so the
    // general machinery yields k = 1, d = 1/1, t = 0/0.
    CssCode code = make_css("uncoded", gf2::BinaryMatrix(0, 1), gf2::BinaryMatrix(0, 1));
    if (code.k != 1 || code.dx != 1 || code.dz != 1) {
        throw RegistryError("uncoded pseudo-entry failed self check");
    }
    return code;
}

}  // namespace

Distances distances(const gf2::BinaryMatrix& h1, const gf2::BinaryMatrix& h2) {
    if (h1.cols() != h2.cols()) {
        throw DimensionMismatch("distances: column counts differ");
    }
    return Distances{
        .dx = min_weight_outside(h1, h2),
        .dz = min_weight_outside(h2, h1),
    };
}

CssCode make_css(std::string id, gf2::BinaryMatrix h1, gf2::BinaryMatrix h2) {
    check_css_pair(h1, h2);
    const Distances d = distances(h1, h2);
    return finish(std::move(id), std::move(h1), std::move(h2), d.dx, d.dz);
}

CssCode make_css_trusted(std::string id, gf2::BinaryMatrix h1, gf2::BinaryMatrix h2,
                         std::size_t dx, std::size_t dz) {
    check_css_pair(h1, h2);
    if (dx == 0 || dz == 0) {
        throw OutOfRange("trusted distances must be at least 1");
    }
    return finish(std::move(id), std::move(h1), std::move(h2), dx, dz);
}

CodeRegistry::CodeRegistry(std::vector<CssCode> codes) : codes_(std::move(codes)) {
    for (std::size_t i = 0; i + 1 < codes_.size(); ++i) {
        if (codes_[i].n > codes_[i + 1].n) {
            throw RegistryError("registry must be ordered by n ascending");
        }
    }
    for (std::size_t i = 0; i < codes_.size(); ++i) {
        for (std::size_t j = i + 1; j < codes_.size(); ++j) {
            if (codes_[i].id == codes_[j].id) {
                throw RegistryError("duplicate registry id " + codes_[i].id);
            }
        }
    }
}

const CssCode* CodeRegistry::find(std::string_view id) const {
    for (const CssCode& c : codes_) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

const CssCode& CodeRegistry::at(std::string_view id) const {
    const CssCode* c = find(id);
    if (c == nullptr) {
        throw RegistryError("unknown code id " + std::string(id));
    }
    return *c;
}

const CodeRegistry& builtin_registry() {
    static const CodeRegistry registry([] {
        std::vector<CssCode> codes;
        codes.push_back(make_uncoded());
        codes.push_back(make_labeled("steane-7", kSteaneRows, kSteaneRows, 7, 1, 3, 3));
        codes.push_back(make_labeled("punct-8", kPunct8H1, kPunct8H2, 8, 1, 3, 3));
        codes.push_back(make_labeled("punct-13", kPunct13H1, kPunct13H2, 13, 1, 3, 5));
        codes.push_back(make_labeled("base-17", kBase17Rows, kBase17Rows, 17, 1, 5, 5));
        return codes;
    }());
    return registry;
}

bool same_rowspaces(const CssCode& a, const CssCode& b) {
    if (a.n != b.n) {
        return false;
    }
    const auto reduced = [](const gf2::BinaryMatrix& m) {
        gf2::RrefResult r = gf2::rref(m);
        gf2::BinaryMatrix nonzero(r.pivot_cols.size(), m.cols());
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
            nonzero.set_row(i, r.matrix.row(i));
        }
        return nonzero;
    };
    return reduced(a.h1) == reduced(b.h1) && reduced(a.h2) == reduced(b.h2);
}

std::string dump_code(const CssCode& code) {
    std::ostringstream out;
    out << "code " << code.id << "\n";
    out << "n " << code.n << "\n";
    out << "k " << code.k << "\n";
    out << "dX " << code.dx << "\n";
    out << "dZ " << code.dz << "\n";
    out << "tX " << code.tx << "\n";
    out << "tZ " << code.tz << "\n";
    out << "h1 " << code.h1.rows() << "x" << code.h1.cols() << "\n";
    if (code.h1.rows() > 0) {
        out << code.h1.to_string() << "\n";
    }
    out << "h2 " << code.h2.rows() << "x" << code.h2.cols() << "\n";
    if (code.h2.rows() > 0) {
        out << code.h2.to_string() << "\n";
    }
    out << "end\n";
    return out.str();
}

namespace {

gf2::BinaryMatrix read_matrix_block(std::istream& in, std::size_t rows, std::size_t cols,
                                    const std::string& which) {
    if (rows == 0) {
        return gf2::BinaryMatrix(0, cols);
    }
    std::vector<std::string> lines;
    std::string line;
    while (lines.size() < rows && in >> line) {
        lines.push_back(line);
    }
    if (lines.size() != rows) {
        throw ParseError("registry file: truncated " + which + " block");
    }
    gf2::BinaryMatrix m = gf2::BinaryMatrix::from_rows(lines);
    if (m.cols() != cols) {
        throw ParseError("registry file: " + which + " declared " + std::to_string(cols) +
                         " columns but rows have " + std::to_string(m.cols()));
    }
    return m;
}

}  // namespace

CodeRegistry load_registry(std::istream& in, bool trust_labels) {
    std::vector<CssCode> codes;
    std::string key;
    while (in >> key) {
        if (key != "code") {
            throw ParseError("registry file: expected 'code', got '" + key + "'");
        }
        std::string id;
        if (!(in >> id)) {
            throw ParseError("registry file: missing code id");
        }
        std::size_t n = 0, k = 0, dx = 0, dz = 0, tx = 0, tz = 0;
        gf2::BinaryMatrix h1, h2;
        bool saw_end = false;
        while (in >> key) {
            if (key == "end") {
                saw_end = true;
                break;
            }
            if (key == "n") {
                in >> n;
            } else if (key == "k") {
                in >> k;
            } else if (key == "dX") {
                in >> dx;
            } else if (key == "dZ") {
                in >> dz;
            } else if (key == "tX") {
                in >> tx;
            } else if (key == "tZ") {
                in >> tz;
            } else if (key == "h1" || key == "h2") {
                std::string shape;
                if (!(in >> shape)) {
                    throw ParseError("registry file: missing shape after " + key);
                }
                const std::size_t x = shape.find('x');
                std::size_t r = 0;
                std::size_t c = 0;
                try {
                    if (x == std::string::npos) {
                        throw std::invalid_argument(shape);
                    }
                    r = std::stoul(shape.substr(0, x));
                    c = std::stoul(shape.substr(x + 1));
                } catch (const std::exception&) {
                    throw ParseError("registry file: bad shape '" + shape + "'");
                }
                gf2::BinaryMatrix m = read_matrix_block(in, r, c, key);
                (key == "h1" ? h1 : h2) = std::move(m);
            } else {
                throw ParseError("registry file: unknown key '" + key + "'");
            }
            if (!in) {
                throw ParseError("registry file: bad value after '" + key + "'");
            }
        }
        if (!saw_end) {
            throw ParseError("registry file: missing 'end' for code " + id);
        }
        if (n == 0 || h1.cols() != n || h2.cols() != n) {
            throw ParseError("registry file: code " + id + " has inconsistent n");
        }
        CssCode code = trust_labels ? make_css_trusted(id, std::move(h1), std::move(h2), dx, dz)
                                    : make_css(id, std::move(h1), std::move(h2));
        if (code.k != k) {
            throw RegistryError("registry file: code " + id + " declares k = " + std::to_string(k) +
                                " but matrices give k = " + std::to_string(code.k));
        }
        if (!trust_labels && (code.dx != dx || code.dz != dz)) {
            throw RegistryError("registry file: code " + id + " declares d = " + std::to_string(dx) +
                                "/" + std::to_string(dz) + " but recomputation gives " +
                                std::to_string(code.dx) + "/" + std::to_string(code.dz));
        }
        codes.push_back(std::move(code));
    }
    std::sort(codes.begin(), codes.end(),
              [](const CssCode& a, const CssCode& b) { return a.n < b.n; });
    return CodeRegistry(std::move(codes));
}

}  // namespace telecode::css
