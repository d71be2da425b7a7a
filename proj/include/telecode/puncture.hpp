#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "telecode/css.hpp"

// Puncturing of CSS codes. A puncture w.r.t. (0|1) on qubit i shortens the
// row space of h1 (row-reduce so at most one row is nonzero at column i,
// drop that row, drop the column) and punctures the row space of h2 (drop
// the column, drop rows that became dependent). A puncture w.r.t. (1|0)
// swaps the roles of h1 and h2. Qubit indices here are 1-based to match
// the usual presentation of puncture index sets; lineage step strings give
// indices in the numbering of the lineage's origin code.

namespace telecode::punct {

enum class Kind {
    z_type,  // (0|1): puncture C1, shorten C2
    x_type,  // (1|0): shorten C1, puncture C2
};

std::string_view kind_token(Kind kind);  // "(0|1)" / "(1|0)"

/// A stabilizer of the origin code, named by block and row. More than one
/// row means the XOR combination of those rows (used only when a removed
/// generator has no single-row name).
struct StabLabel {
    char block = 'X';                // 'X' (h1 row) or 'Z' (h2 row)
    std::vector<std::size_t> rows;   // 1-based origin rows, ascending

    std::string to_string() const;   // "S^X_7", "S^Z_2+S^Z_5"
    auto operator<=>(const StabLabel&) const = default;
};

struct PunctureStep {
    Kind kind = Kind::z_type;
    std::size_t qubit_index = 0;   // 1-based, in the code the step was applied to
    std::size_t origin_qubit = 0;  // 1-based, in the lineage origin
    // Origin-code generators that leave the kept generating set at this step.
    std::vector<StabLabel> removed_stabilizers;
};

/// Maps a row of the derived code's stabilizer block to the origin-code row
/// it is the restriction of.
struct KeptStabilizer {
    char block = 'X';
    std::size_t result_row = 0;  // 1-based in the derived code
    std::size_t origin_row = 0;  // 1-based in the origin code
    auto operator<=>(const KeptStabilizer&) const = default;
};

struct Lineage {
    std::string origin_id;
    std::vector<PunctureStep> steps;
    std::vector<std::size_t> kept_qubits;     // origin numbering, 1-based, ascending
    std::vector<std::size_t> removed_z_type;  // (0|1)-punctured origin qubits
    std::vector<std::size_t> removed_x_type;  // (1|0)-punctured origin qubits
    // Valid only when attribution_complete: every derived stabilizer row is
    // the restriction of a single origin generator.
    std::vector<KeptStabilizer> kept_stabilizers;
    bool attribution_complete = false;

    std::vector<StabLabel> removed_stabilizers() const;  // union over steps, sorted
};

struct StepResult {
    css::CssCode code;
    PunctureStep step;
};

/// One (0|1) puncture. Throws IndexError for a bad qubit, DegenerateResult
/// if the result loses k = 1 or a distance collapses.
StepResult puncture_z_type(const css::CssCode& code, std::size_t qubit);

/// One (1|0) puncture; mirror image of puncture_z_type.
StepResult puncture_x_type(const css::CssCode& code, std::size_t qubit);

struct LineageSpec {
    std::string origin_id;
    std::vector<std::pair<Kind, std::size_t>> steps;  // origin-numbered qubits, 1-based
};

/// Parses "(0|1)@1,(0|1)@2,(1|0)@6"; an empty string is an empty lineage.
LineageSpec parse_lineage(std::string origin_id, std::string_view steps_text);
std::string format_steps(const LineageSpec& spec);

struct ReplayResult {
    css::CssCode code;
    Lineage lineage;
};

/// Applies the steps in order to the origin code. When every kept stabilizer
/// of the result has a single-origin-row name, the result's matrices are the
/// restrictions of those origin rows (same row spaces as the raw reduction,
/// asserted internally) and kept_stabilizers gives the row map.
ReplayResult apply_lineage(const css::CssCode& origin,
                           const std::vector<std::pair<Kind, std::size_t>>& steps);

/// apply_lineage with the origin looked up in a registry.
ReplayResult replay(const LineageSpec& spec, const css::CodeRegistry& registry);

struct CompatViolation {
    char block = 'X';
    std::size_t origin_row = 0;  // 1-based
    gf2::BinaryVector error;     // on the small code's qubits
    std::string detail;
};

struct CompatReport {
    bool pass = false;
    std::size_t errors_checked = 0;
    std::vector<CompatViolation> violations;
};

/// Verifies the shared-decoder property: every kept stabilizer evaluated on a
/// zero-padded small-code error gives the same syndrome bit as the derived
/// code's own check row, and kept X (Z) generators have no support on
/// (0|1)- ((1|0)-) punctured qubits. Exhaustive for weight <= 2, then
/// `random_samples` seeded draws of arbitrary weight per branch.
CompatReport syndrome_compatibility_check(const css::CssCode& big, const css::CssCode& small,
                                          const Lineage& lineage, std::uint64_t seed = 1,
                                          std::size_t random_samples = 1000);

struct SearchHit {
    std::vector<std::size_t> qubits;  // 1-based origin indices, ascending
    css::CssCode code;
};

/// Brute-force search over all index subsets of the given size whose
/// sequential puncture yields k = 1 and the requested distances.
/// Guards: origin.n <= 20, set_size <= 6.
std::vector<SearchHit> search_puncture_sets(const css::CssCode& origin, Kind kind,
                                            std::size_t set_size, std::size_t want_dx,
                                            std::size_t want_dz, std::size_t max_hits = 16);

}  // namespace telecode::punct
