#include "telecode/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace telecode::rel {

namespace {

const std::vector<std::string> kPuncturedFamily = {"uncoded", "punct-8", "punct-13", "base-17"};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ReliabilityPoint evaluate(const css::CssCode& code, double f0, unsigned r,
                          const pur::PauliChannel& ch) {
    ReliabilityPoint p;
    p.code_id = code.id;
    p.n = code.n;
    p.r = r;
    p.f0 = f0;
    p.qx = ch.qx;
    p.qz = ch.qz;
    p.p_succ_x = branch_success(code.n, code.tx, ch.qx);
    p.p_succ_z = branch_success(code.n, code.tz, ch.qz);
    p.p_l = 1.0 - p.p_succ_x * p.p_succ_z;
    return p;
}

}  // namespace

double branch_success(std::size_t n, std::size_t t, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw OutOfRange("branch probability " + std::to_string(q) + " outside [0, 1]");
    }
    if (t > n) {
        throw OutOfRange("correction radius " + std::to_string(t) + " exceeds n = " +
                         std::to_string(n));
    }
    double sum = 0.0;
    double binom = 1.0;  // C(n, i)
    for (std::size_t i = 0; i <= t; ++i) {
        sum += binom * std::pow(q, static_cast<double>(i)) *
               std::pow(1.0 - q, static_cast<double>(n - i));
        binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return std::min(sum, 1.0);
}

double logical_error(const css::CssCode& code, const pur::PauliChannel& ch) {
    return 1.0 - branch_success(code.n, code.tx, ch.qx) * branch_success(code.n, code.tz, ch.qz);
}

std::vector<double> fidelity_grid(double start, double end, double step) {
    if (!(step > 0.0) || start > end) {
        throw OutOfRange("fidelity grid needs start <= end and step > 0");
    }
    const std::size_t count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(std::min(start + static_cast<double>(i) * step, end));
    }
    return grid;
}

std::vector<ReliabilityPoint> sweep(const css::CodeRegistry& registry,
                                    std::span<const double> f0_grid,
                                    std::span<const unsigned> rounds,
                                    std::span<const std::string> code_ids) {
    if (f0_grid.empty() || rounds.empty()) {
        throw OutOfRange("sweep grids must be nonempty");
    }
    std::vector<const css::CssCode*> codes;
    if (code_ids.empty()) {
        for (const css::CssCode& c : registry.codes()) {
            codes.push_back(&c);
        }
    } else {
        for (const std::string& id : code_ids) {
            codes.push_back(&registry.at(id));
        }
    }
    std::vector<ReliabilityPoint> out;
    out.reserve(codes.size() * rounds.size() * f0_grid.size());
    for (const css::CssCode* code : codes) {
        for (unsigned r : rounds) {
            for (double f0 : f0_grid) {
                const pur::PauliChannel ch = pur::to_channel(pur::purify(f0, r));
                out.push_back(evaluate(*code, f0, r, ch));
            }
        }
    }
    return out;
}

void write_sweep_csv(std::ostream& out, std::span<const ReliabilityPoint> points) {
    out << "code_id,n,r,f0,qX,qZ,pL\n";
    for (const ReliabilityPoint& p : points) {
        out << p.code_id << ',' << p.n << ',' << p.r << ',' << fmt17(p.f0) << ',' << fmt17(p.qx)
            << ',' << fmt17(p.qz) << ',' << fmt17(p.p_l) << '\n';
    }
}

double find_crossing(const css::CssCode& code, unsigned r, double target, double f0_lo,
                     double f0_hi) {
    if (!(target >= 0.0 && target <= 1.0)) {
        throw OutOfRange("target must be a probability");
    }
    const auto pl_at = [&](double f0) {
        return logical_error(code, pur::to_channel(pur::purify(f0, r)));
    };
    if (pl_at(f0_lo) <= target) {
        return f0_lo;
    }
    if (pl_at(f0_hi) > target) {
        throw NoCrossing(code.id + " at r = " + std::to_string(r) + " never reaches " +
                         std::to_string(target) + " on the given fidelity range");
    }
    double lo = f0_lo;
    double hi = f0_hi;
    while (hi - lo > 1e-5) {
        const double mid = 0.5 * (lo + hi);
        if (pl_at(mid) <= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

SelectionResult select_code(const css::CodeRegistry& registry, double f0, unsigned r,
                            double target, Family family) {
    SelectionResult result;
    result.target = target;
    result.f0 = f0;
    result.r = r;
    const pur::PauliChannel ch = pur::to_channel(pur::purify(f0, r));
    for (const css::CssCode& code : registry.codes()) {
        if (family == Family::punctured &&
            std::find(kPuncturedFamily.begin(), kPuncturedFamily.end(), code.id) ==
                kPuncturedFamily.end()) {
            continue;
        }
        result.evaluations.push_back(evaluate(code, f0, r, ch));
        if (result.evaluations.back().p_l <= target) {
            result.feasible.push_back(code.id);
        }
    }
    if (!result.feasible.empty()) {
        // registry order is n ascending, so the first feasible entry is shortest
        result.chosen = result.feasible.front();
        result.chosen_n = registry.at(*result.chosen).n;
    }
    return result;
}

UncodedDiagnostic uncoded_diagnostic(const pur::BellDiagonalState& s) {
    const pur::PauliChannel ch = pur::to_channel(s);
    return UncodedDiagnostic{
        .factorized = 1.0 - (1.0 - ch.qx) * (1.0 - ch.qz),
        .any_error = 1.0 - s.a,
    };
}

}  // namespace telecode::rel
