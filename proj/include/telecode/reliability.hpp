#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "telecode/css.hpp"
#include "telecode/purification.hpp"

// Analytic logical error probabilities. Each branch is a binary symmetric
// channel; the decoder model succeeds when the branch error weight is at
// most the correction radius, so
//   P_succ = sum_{i<=t} C(n,i) (1-q)^(n-i) q^i,   P_L = 1 - P_succ,X * P_succ,Z.

namespace telecode::rel {

/// Binomial tail: probability of at most t errors among n uses at rate q.
double branch_success(std::size_t n, std::size_t t, double q);

/// 1 - branch_success(n, tx, qx) * branch_success(n, tz, qz). For the
/// uncoded entry (n = 1, t = 0) this is 1 - (1-qx)(1-qz).
double logical_error(const css::CssCode& code, const pur::PauliChannel& ch);

struct ReliabilityPoint {
    std::string code_id;
    std::size_t n = 0;
    unsigned r = 0;
    double f0 = 0.0;
    double qx = 0.0;
    double qz = 0.0;
    double p_succ_x = 0.0;
    double p_succ_z = 0.0;
    double p_l = 0.0;
};

/// Inclusive grid start, start+step, ...; the final point is clamped to end
/// so accumulated rounding cannot push a fidelity past 1.
std::vector<double> fidelity_grid(double start, double end, double step);

/// Cartesian evaluation ordered (code in registry order, r ascending,
/// f0 ascending). `code_ids` empty means every registry code.
std::vector<ReliabilityPoint> sweep(const css::CodeRegistry& registry,
                                    std::span<const double> f0_grid,
                                    std::span<const unsigned> rounds,
                                    std::span<const std::string> code_ids = {});

/// CSV schema: code_id,n,r,f0,qX,qZ,pL with 17 significant digits on floats.
void write_sweep_csv(std::ostream& out, std::span<const ReliabilityPoint> points);

/// Minimal f0 in [f0_lo, f0_hi] with pL <= target, by bisection to 1e-5
/// (pL is monotone non-increasing in f0 on the operating range).
/// Throws NoCrossing if even f0_hi misses the target.
double find_crossing(const css::CssCode& code, unsigned r, double target, double f0_lo = 0.80,
                     double f0_hi = 1.0);

enum class Family {
    all,
    punctured,  // only codes sharing the base stabilizer structure + uncoded
};

struct SelectionResult {
    double target = 0.0;
    double f0 = 0.0;
    unsigned r = 0;
    std::vector<std::string> feasible;      // ids meeting the target, n ascending
    std::optional<std::string> chosen;      // shortest feasible code
    std::optional<std::size_t> chosen_n;
    std::vector<ReliabilityPoint> evaluations;  // every candidate, registry order
};

SelectionResult select_code(const css::CodeRegistry& registry, double f0, unsigned r,
                            double target, Family family = Family::all);

/// The uncoded baseline under the branch-factorized formula vs. the plain
/// any-Bell-error probability 1 - a_r. They differ by b - qx*qz (the Y
/// double-count); both are reported for diagnostics.
struct UncodedDiagnostic {
    double factorized;  // 1 - (1-qx)(1-qz)
    double any_error;   // 1 - a_r
};

UncodedDiagnostic uncoded_diagnostic(const pur::BellDiagonalState& s);

}  // namespace telecode::rel
