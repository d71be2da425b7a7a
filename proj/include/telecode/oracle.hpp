#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "telecode/css.hpp"
#include "telecode/purification.hpp"

// Independent verification of the analytic pipeline: exhaustive per-branch
// enumeration, an exact joint evaluation of the lookup decoder, and seeded
// Monte-Carlo sampling. Branch conventions follow the stabilizer structure:
// bit-flip (X) errors are checked against h2 and their residuals against the
// row space of h1; phase-flip (Z) errors mirror that. All of it requires
// k = 1, which every supported code has.

namespace telecode::oracle {

enum class Branch {
    x_errors,  // bit-flip vectors, syndromes under h2
    z_errors,  // phase-flip vectors, syndromes under h1
};

enum class Convention {
    direct,   // label dX protects the X branch (tX -> X, tZ -> Z)
    swapped,  // measured branch distances pair the labels the other way round
};

struct OperationalDistances {
    // Minimum weight of an undetectable logical error per branch; empty if
    // none exists up to searched_up_to.
    std::optional<std::size_t> x_branch;
    std::optional<std::size_t> z_branch;
    std::size_t searched_up_to = 0;
    // Minimum-weight witnesses (error masks over qubits), when found.
    std::optional<std::uint32_t> x_witness;
    std::optional<std::uint32_t> z_witness;
};

/// Exhaustive search over branch errors of weight 1..max_weight.
OperationalDistances measure_operational_distances(const css::CssCode& code,
                                                   std::size_t max_weight);

struct ConventionResolution {
    Convention convention = Convention::direct;
    std::size_t radius_x = 0;  // radius actually safe on the X branch
    std::size_t radius_z = 0;
    OperationalDistances measured;
};

/// Measures both branch distances and decides which way the (tX, tZ) labels
/// pair with the branches. Throws DistanceContradiction, naming a colliding
/// error pair, when neither pairing is consistent with the measurements.
ConventionResolution resolve_convention(const css::CssCode& code);

/// Coset-leader table for one branch: every syndrome reachable by an error of
/// weight <= radius maps to a minimum-weight representative.
class SyndromeTable {
public:
    /// Enumerates all errors of weight <= radius. Throws DistanceContradiction
    /// if two of them share a syndrome but differ by a logical operator.
    SyndromeTable(const css::CssCode& code, Branch branch, std::size_t radius);

    Branch branch() const { return branch_; }
    std::size_t radius() const { return radius_; }
    /// Occupied syndromes. Lower than errors_enumerated() when degenerate
    /// errors (stabilizer-equivalent pairs) share a syndrome.
    std::size_t entries() const { return entries_; }
    /// Errors visited during construction: sum of C(n, w) for w <= radius.
    std::size_t errors_enumerated() const { return enumerated_; }
    std::size_t rows() const { return rows_; }

    std::uint32_t syndrome_of(std::uint32_t error) const;
    /// Representative for a syndrome, or nullopt if no table entry.
    std::optional<std::uint32_t> decode(std::uint32_t synd) const;
    /// True iff a zero-syndrome residual is a logical operator (k = 1 coset test).
    bool residual_is_logical(std::uint32_t residual) const;

    std::uint32_t column_syndrome(std::size_t qubit) const { return col_synd_[qubit]; }
    std::uint32_t logical_mask() const { return logical_mask_; }

private:
    Branch branch_;
    std::size_t radius_;
    std::size_t n_;
    std::size_t rows_;
    std::size_t entries_ = 0;
    std::size_t enumerated_ = 0;
    std::vector<std::uint32_t> col_synd_;  // per qubit, syndrome contribution
    std::uint32_t logical_mask_ = 0;       // opposite-branch logical functional
    std::vector<std::int64_t> rep_;        // syndrome -> error mask, -1 empty
};

enum class DecodeMode {
    threshold,  // fail iff weight > radius (the analytic model)
    lookup,     // fail iff the table decode leaves a logical residual
};

/// Exact branch failure probability by enumerating all 2^n branch errors
/// (guard n <= 20) under an i.i.d. flip probability q.
double exact_branch_error(const css::CssCode& code, Branch branch, double q, DecodeMode mode,
                          std::size_t radius);

/// Exact failure probability of the two-table lookup decoder under the full
/// correlated Pauli channel (X and Z branch errors share Y events), via a
/// transfer-matrix pass over the joint syndrome/logical-class distribution.
double exact_joint_lookup_error(const css::CssCode& code, const pur::PauliChannel& ch,
                                const SyndromeTable& x_table, const SyndromeTable& z_table);

struct McResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t failures = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

/// Samples i.i.d. per-qubit Pauli errors, decodes both branches with the
/// given tables, and counts joint failures. Deterministic for a fixed
/// (seed, workers) pair; worker j draws from mt19937_64 with a splitmix-mixed
/// (seed, j) stream.
McResult mc_logical_error(const css::CssCode& code, const pur::PauliChannel& ch,
                          const SyndromeTable& x_table, const SyndromeTable& z_table,
                          std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

struct OracleReport {
    std::string code_id;
    double f0 = 0.0;
    unsigned r = 0;
    Convention convention = Convention::direct;
    std::size_t radius_x = 0;
    std::size_t radius_z = 0;
    double analytic_pl = 0.0;      // label-radius binomial formula
    double exact_threshold = 0.0;  // resolved radii, branch-factorized enumeration
    double exact_lookup = 0.0;     // joint lookup-decoder failure probability
    McResult mc;
};

struct PointSpec {
    double f0;
    unsigned r;
};

/// The representative validation points (f0, r).
std::span<const PointSpec> default_validation_points();

/// Full evaluation of one code at one operating point.
OracleReport run_point(const css::CssCode& code, double f0, unsigned r, std::uint64_t samples,
                       std::uint64_t seed, unsigned workers = 1);

}  // namespace telecode::oracle
