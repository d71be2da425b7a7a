#include "telecode/puncture.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace telecode::punct {

namespace {

// Maintains a row-reduced basis for incremental independence tests.
class IncrementalBasis {
public:
    // Absorbs v if it is independent of the rows seen so far.
    bool add(gf2::BinaryVector v) {
        reduce(v);
        if (v.is_zero()) {
            return false;
        }
        std::size_t pivot = 0;
        while (!v.get(pivot)) {
            ++pivot;
        }
        reduced_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }

    std::size_t size() const { return reduced_.size(); }

private:
    void reduce(gf2::BinaryVector& v) const {
        for (std::size_t i = 0; i < reduced_.size(); ++i) {
            if (v.get(pivots_[i])) {
                v ^= reduced_[i];
            }
        }
    }

    std::vector<gf2::BinaryVector> reduced_;
    std::vector<std::size_t> pivots_;
};

gf2::BinaryVector restrict_to(const gf2::BinaryVector& v, const std::vector<std::size_t>& kept0) {
    gf2::BinaryVector out(kept0.size());
    for (std::size_t i = 0; i < kept0.size(); ++i) {
        if (v.get(kept0[i])) {
            out.set(i, true);
        }
    }
    return out;
}

// Shorten the row space at column c: at most one row may remain nonzero at c
// after row reduction; that row is dropped along with the column.
gf2::BinaryMatrix shorten_rows(const gf2::BinaryMatrix& m, std::size_t c) {
    gf2::BinaryMatrix work = m;
    std::vector<std::size_t> touching;
    for (std::size_t r = 0; r < work.rows(); ++r) {
        if (work.get(r, c)) {
            touching.push_back(r);
        }
    }
    if (!touching.empty()) {
        const std::size_t pivot = touching.back();
        for (std::size_t i = 0; i + 1 < touching.size(); ++i) {
            work.xor_row(touching[i], pivot);
        }
        work = work.without_row(pivot);
    }
    return work.without_column(c);
}

// Puncture the row space at column c: drop the column, then drop rows that
// became dependent (keeping the earliest independent ones).
gf2::BinaryMatrix puncture_rows(const gf2::BinaryMatrix& m, std::size_t c) {
    const gf2::BinaryMatrix dropped = m.without_column(c);
    IncrementalBasis basis;
    std::vector<gf2::BinaryVector> kept;
    for (std::size_t r = 0; r < dropped.rows(); ++r) {
        gf2::BinaryVector row = dropped.row(r);
        if (basis.add(row)) {
            kept.push_back(std::move(row));
        }
    }
    if (kept.empty()) {
        return gf2::BinaryMatrix(0, dropped.cols());
    }
    return gf2::BinaryMatrix::from_row_vectors(kept);
}

struct SideAttribution {
    std::vector<std::size_t> kept;  // 0-based origin rows, ascending
    bool complete = false;
};

// Greedily picks the lowest-numbered origin generators that avoid the
// forbidden qubits and stay independent after restriction to the kept qubits.
SideAttribution attribute_side(const gf2::BinaryMatrix& origin_block,
                               const std::vector<std::size_t>& kept_qubits0,
                               const std::vector<char>& forbidden, std::size_t current_rank) {
    SideAttribution out;
    IncrementalBasis basis;
    for (std::size_t j = 0; j < origin_block.rows(); ++j) {
        const gf2::BinaryVector row = origin_block.row(j);
        bool touches = false;
        for (std::size_t q = 0; q < forbidden.size() && !touches; ++q) {
            touches = forbidden[q] && row.get(q);
        }
        if (touches) {
            continue;
        }
        if (basis.add(restrict_to(row, kept_qubits0))) {
            out.kept.push_back(j);
        }
    }
    out.complete = out.kept.size() == current_rank;
    return out;
}

std::vector<StabLabel> label_diff(char block, const std::vector<std::size_t>& before,
                                  const std::vector<std::size_t>& after) {
    std::vector<StabLabel> removed;
    for (std::size_t j : before) {
        if (std::find(after.begin(), after.end(), j) == after.end()) {
            removed.push_back(StabLabel{block, {j + 1}});
        }
    }
    return removed;
}

css::CssCode step_code(const css::CssCode& code, Kind kind, std::size_t idx0,
                       const std::string& new_id) {
    gf2::BinaryMatrix h1 = kind == Kind::z_type ? shorten_rows(code.h1, idx0)
                                                : puncture_rows(code.h1, idx0);
    gf2::BinaryMatrix h2 = kind == Kind::z_type ? puncture_rows(code.h2, idx0)
                                                : shorten_rows(code.h2, idx0);
    css::CssCode next;
    try {
        next = css::make_css(new_id, std::move(h1), std::move(h2));
    } catch (const EmptyCodeSet& e) {
        throw DegenerateResult(std::string("puncture made the code degenerate: ") + e.what());
    }
    if (next.k != 1) {
        throw DegenerateResult("puncture left k = " + std::to_string(next.k) + ", expected 1");
    }
    // One distance is preserved, the other may drop by at most one per step.
    const std::size_t kept_before = kind == Kind::z_type ? code.dz : code.dx;
    const std::size_t kept_after = kind == Kind::z_type ? next.dz : next.dx;
    const std::size_t cut_before = kind == Kind::z_type ? code.dx : code.dz;
    const std::size_t cut_after = kind == Kind::z_type ? next.dx : next.dz;
    if (kept_after != kept_before || cut_after > cut_before || cut_after + 1 < cut_before) {
        throw Error("puncture distance invariant violated: " + std::string(kind_token(kind)) +
                    " step took d = " + std::to_string(code.dx) + "/" + std::to_string(code.dz) +
                    " to " + std::to_string(next.dx) + "/" + std::to_string(next.dz));
    }
    return next;
}

}  // namespace

std::string_view kind_token(Kind kind) {
    return kind == Kind::z_type ? "(0|1)" : "(1|0)";
}

std::string StabLabel::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) {
            out += '+';
        }
        out += "S^";
        out += block;
        out += '_';
        out += std::to_string(rows[i]);
    }
    return out;
}

std::vector<StabLabel> Lineage::removed_stabilizers() const {
    std::vector<StabLabel> all;
    for (const PunctureStep& step : steps) {
        all.insert(all.end(), step.removed_stabilizers.begin(), step.removed_stabilizers.end());
    }
    // A label that left the kept set mid-lineage can be re-admitted once the
    // greedy base shrinks; anything kept at the end is not removed.
    for (const KeptStabilizer& ks : kept_stabilizers) {
        const StabLabel kept{ks.block, {ks.origin_row}};
        all.erase(std::remove(all.begin(), all.end(), kept), all.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

ReplayResult apply_lineage(const css::CssCode& origin,
                           const std::vector<std::pair<Kind, std::size_t>>& steps) {
    css::CssCode current = origin;
    Lineage lineage;
    lineage.origin_id = origin.id;

    std::vector<std::size_t> kept0(origin.n);
    std::iota(kept0.begin(), kept0.end(), std::size_t{0});
    std::vector<char> removed_z(origin.n, 0);
    std::vector<char> removed_x(origin.n, 0);

    SideAttribution attr_x = attribute_side(origin.h1, kept0, removed_z, gf2::rank(current.h1));
    SideAttribution attr_z = attribute_side(origin.h2, kept0, removed_x, gf2::rank(current.h2));

    for (const auto& [kind, origin_qubit] : steps) {
        if (origin_qubit < 1 || origin_qubit > origin.n) {
            throw IndexError("puncture qubit " + std::to_string(origin_qubit) +
                             " out of range [1, " + std::to_string(origin.n) + "]");
        }
        const std::size_t oq0 = origin_qubit - 1;
        const auto pos = std::find(kept0.begin(), kept0.end(), oq0);
        if (pos == kept0.end()) {
            throw IndexError("puncture qubit " + std::to_string(origin_qubit) +
                             " was already removed");
        }
        const std::size_t idx0 = static_cast<std::size_t>(pos - kept0.begin());

        current = step_code(current, kind, idx0, current.id);
        (kind == Kind::z_type ? removed_z : removed_x)[oq0] = 1;
        kept0.erase(pos);

        SideAttribution new_x = attribute_side(origin.h1, kept0, removed_z, gf2::rank(current.h1));
        SideAttribution new_z = attribute_side(origin.h2, kept0, removed_x, gf2::rank(current.h2));

        PunctureStep step;
        step.kind = kind;
        step.qubit_index = idx0 + 1;
        step.origin_qubit = origin_qubit;
        step.removed_stabilizers = label_diff('X', attr_x.kept, new_x.kept);
        for (StabLabel& l : label_diff('Z', attr_z.kept, new_z.kept)) {
            step.removed_stabilizers.push_back(std::move(l));
        }
        lineage.steps.push_back(std::move(step));
        attr_x = std::move(new_x);
        attr_z = std::move(new_z);
    }

    lineage.kept_qubits.reserve(kept0.size());
    for (std::size_t q : kept0) {
        lineage.kept_qubits.push_back(q + 1);
    }
    for (std::size_t q = 0; q < origin.n; ++q) {
        if (removed_z[q]) {
            lineage.removed_z_type.push_back(q + 1);
        }
        if (removed_x[q]) {
            lineage.removed_x_type.push_back(q + 1);
        }
    }
    lineage.attribution_complete = attr_x.complete && attr_z.complete;

    if (!steps.empty()) {
        LineageSpec spec{origin.id, steps};
        current.id = origin.id + "[" + format_steps(spec) + "]";
    }

    if (lineage.attribution_complete && !steps.empty()) {
        // Present the result as restrictions of the kept origin generators.
        std::vector<gf2::BinaryVector> x_rows, z_rows;
        for (std::size_t j : attr_x.kept) {
            x_rows.push_back(restrict_to(origin.h1.row(j), kept0));
        }
        for (std::size_t j : attr_z.kept) {
            z_rows.push_back(restrict_to(origin.h2.row(j), kept0));
        }
        gf2::BinaryMatrix h1 = x_rows.empty() ? gf2::BinaryMatrix(0, kept0.size())
                                              : gf2::BinaryMatrix::from_row_vectors(x_rows);
        gf2::BinaryMatrix h2 = z_rows.empty() ? gf2::BinaryMatrix(0, kept0.size())
                                              : gf2::BinaryMatrix::from_row_vectors(z_rows);
        css::CssCode rebuilt = css::make_css(current.id, std::move(h1), std::move(h2));
        if (!css::same_rowspaces(rebuilt, current)) {
            throw Error("internal: kept-generator presentation spans a different code");
        }
        current = std::move(rebuilt);
        for (std::size_t i = 0; i < attr_x.kept.size(); ++i) {
            lineage.kept_stabilizers.push_back(KeptStabilizer{'X', i + 1, attr_x.kept[i] + 1});
        }
        for (std::size_t i = 0; i < attr_z.kept.size(); ++i) {
            lineage.kept_stabilizers.push_back(KeptStabilizer{'Z', i + 1, attr_z.kept[i] + 1});
        }
    }

    return ReplayResult{std::move(current), std::move(lineage)};
}

StepResult puncture_z_type(const css::CssCode& code, std::size_t qubit) {
    ReplayResult r = apply_lineage(code, {{Kind::z_type, qubit}});
    return StepResult{std::move(r.code), std::move(r.lineage.steps.front())};
}

StepResult puncture_x_type(const css::CssCode& code, std::size_t qubit) {
    ReplayResult r = apply_lineage(code, {{Kind::x_type, qubit}});
    return StepResult{std::move(r.code), std::move(r.lineage.steps.front())};
}

LineageSpec parse_lineage(std::string origin_id, std::string_view steps_text) {
    LineageSpec spec;
    spec.origin_id = std::move(origin_id);
    std::size_t pos = 0;
    while (pos < steps_text.size()) {
        std::size_t comma = steps_text.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = steps_text.size();
        }
        std::string token{steps_text.substr(pos, comma - pos)};
        token.erase(std::remove_if(token.begin(), token.end(),
                                   [](unsigned char ch) { return std::isspace(ch); }),
                    token.end());
        if (!token.empty()) {
            const std::size_t at = token.find('@');
            if (at == std::string::npos) {
                throw ParseError("lineage step '" + token + "': expected '(0|1)@i' or '(1|0)@i'");
            }
            const std::string head = token.substr(0, at);
            Kind kind;
            if (head == "(0|1)") {
                kind = Kind::z_type;
            } else if (head == "(1|0)") {
                kind = Kind::x_type;
            } else {
                throw ParseError("lineage step '" + token + "': unknown puncture kind '" + head + "'");
            }
            const std::string digits = token.substr(at + 1);
            std::size_t idx = 0;
            std::size_t consumed = 0;
            try {
                idx = std::stoul(digits, &consumed);
            } catch (const std::exception&) {
                throw ParseError("lineage step '" + token + "': bad qubit index");
            }
            if (consumed != digits.size() || idx == 0) {
                throw ParseError("lineage step '" + token + "': bad qubit index");
            }
            spec.steps.emplace_back(kind, idx);
        }
        pos = comma + 1;
    }
    return spec;
}

std::string format_steps(const LineageSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += kind_token(spec.steps[i].first);
        out += '@';
        out += std::to_string(spec.steps[i].second);
    }
    return out;
}

ReplayResult replay(const LineageSpec& spec, const css::CodeRegistry& registry) {
    return apply_lineage(registry.at(spec.origin_id), spec.steps);
}

CompatReport syndrome_compatibility_check(const css::CssCode& big, const css::CssCode& small,
                                          const Lineage& lineage, std::uint64_t seed,
                                          std::size_t random_samples) {
    if (!lineage.attribution_complete) {
        throw Error("syndrome compatibility needs a lineage with complete stabilizer attribution");
    }
    if (big.n != lineage.kept_qubits.size() + lineage.removed_z_type.size() +
                     lineage.removed_x_type.size() ||
        small.n != lineage.kept_qubits.size()) {
        throw DimensionMismatch("lineage does not connect these two codes");
    }

    CompatReport report;

    // Kept X generators may not touch |0>-projected qubits; kept Z generators
    // may not touch |+>-projected qubits.
    for (const KeptStabilizer& ks : lineage.kept_stabilizers) {
        const gf2::BinaryMatrix& block = ks.block == 'X' ? big.h1 : big.h2;
        const auto& banned = ks.block == 'X' ? lineage.removed_z_type : lineage.removed_x_type;
        const gf2::BinaryVector row = block.row(ks.origin_row - 1);
        for (std::size_t q : banned) {
            if (row.get(q - 1)) {
                report.violations.push_back(CompatViolation{
                    ks.block, ks.origin_row, gf2::BinaryVector(small.n),
                    "kept stabilizer has support on removed qubit " + std::to_string(q)});
            }
        }
    }

    const auto pad = [&](const gf2::BinaryVector& e) {
        gf2::BinaryVector padded(big.n);
        for (std::size_t i = 0; i < small.n; ++i) {
            if (e.get(i)) {
                padded.set(lineage.kept_qubits[i] - 1, true);
            }
        }
        return padded;
    };

    // branch = 'X': bit-flip errors, checked by the Z block; 'Z' mirrored.
    const auto check_error = [&](char branch, const gf2::BinaryVector& e) {
        const gf2::BinaryVector padded = pad(e);
        const char block = branch == 'X' ? 'Z' : 'X';
        const gf2::BinaryMatrix& small_block = block == 'X' ? small.h1 : small.h2;
        const gf2::BinaryMatrix& big_block = block == 'X' ? big.h1 : big.h2;
        for (const KeptStabilizer& ks : lineage.kept_stabilizers) {
            if (ks.block != block) {
                continue;
            }
            const bool small_bit = gf2::BinaryVector::dot(small_block.row(ks.result_row - 1), e);
            const bool big_bit = gf2::BinaryVector::dot(big_block.row(ks.origin_row - 1), padded);
            if (small_bit != big_bit) {
                report.violations.push_back(
                    CompatViolation{ks.block, ks.origin_row, e,
                                    "syndrome bit mismatch on padded error"});
            }
        }
        ++report.errors_checked;
    };

    const auto check_both = [&](const gf2::BinaryVector& e) {
        check_error('X', e);
        check_error('Z', e);
    };

    check_both(gf2::BinaryVector(small.n));
    for (std::size_t i = 0; i < small.n; ++i) {
        gf2::BinaryVector e(small.n);
        e.set(i, true);
        check_both(e);
        for (std::size_t j = i + 1; j < small.n; ++j) {
            gf2::BinaryVector e2 = e;
            e2.set(j, true);
            check_both(e2);
        }
    }

    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < random_samples; ++s) {
        gf2::BinaryVector e(small.n);
        for (std::size_t i = 0; i < small.n; ++i) {
            if (rng() & 1) {
                e.set(i, true);
            }
        }
        check_both(e);
    }

    report.pass = report.violations.empty();
    return report;
}

std::vector<SearchHit> search_puncture_sets(const css::CssCode& origin, Kind kind,
                                            std::size_t set_size, std::size_t want_dx,
                                            std::size_t want_dz, std::size_t max_hits) {
    if (origin.n > 20) {
        throw GuardExceeded("puncture search is capped at n <= 20");
    }
    if (set_size > 6 || set_size == 0 || set_size >= origin.n) {
        throw GuardExceeded("puncture search needs 1 <= set size <= 6 (and < n)");
    }
    std::vector<SearchHit> hits;
    std::vector<std::size_t> combo(set_size);
    std::iota(combo.begin(), combo.end(), std::size_t{1});
    while (true) {
        std::vector<std::pair<Kind, std::size_t>> steps;
        steps.reserve(set_size);
        for (std::size_t q : combo) {
            steps.emplace_back(kind, q);
        }
        try {
            ReplayResult r = apply_lineage(origin, steps);
            if (r.code.k == 1 && r.code.dx == want_dx && r.code.dz == want_dz) {
                hits.push_back(SearchHit{combo, std::move(r.code)});
                if (hits.size() >= max_hits) {
                    break;
                }
            }
        } catch (const DegenerateResult&) {
        } catch (const Error&) {
            // distance-invariant failures disqualify the candidate
        }
        // next lexicographic combination
        std::size_t i = set_size;
        while (i > 0 && combo[i - 1] == origin.n - set_size + i) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++combo[i - 1];
        for (std::size_t j = i; j < set_size; ++j) {
            combo[j] = combo[j - 1] + 1;
        }
    }
    return hits;
}

}  // namespace telecode::punct
