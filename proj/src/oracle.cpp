#include "telecode/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <thread>

#include "telecode/reliability.hpp"

namespace telecode::oracle {

namespace {

constexpr std::size_t kMaxQubits = 20;
constexpr std::size_t kMaxStateBits = 22;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

bool parity(std::uint32_t x) {
    return (std::popcount(x) & 1) != 0;
}

std::uint32_t mask_of(const gf2::BinaryVector& v) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) {
            mask |= std::uint32_t{1} << i;
        }
    }
    return mask;
}

gf2::BinaryVector vector_of(std::uint32_t mask, std::size_t n) {
    gf2::BinaryVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1) {
            v.set(i, true);
        }
    }
    return v;
}

std::string support_string(std::uint32_t mask) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; mask >> i; ++i) {
        if ((mask >> i) & 1) {
            if (!first) {
                out += ",";
            }
            out += std::to_string(i + 1);
            first = false;
        }
    }
    return out + "}";
}

const gf2::BinaryMatrix& check_block(const css::CssCode& code, Branch branch) {
    return branch == Branch::x_errors ? code.h2 : code.h1;
}

const gf2::BinaryMatrix& stabilizer_block(const css::CssCode& code, Branch branch) {
    return branch == Branch::x_errors ? code.h1 : code.h2;
}

// Functional separating logical residuals from the branch's stabilizer space:
// any element of ker(stab block) outside the opposite row space. Requires k = 1.
std::uint32_t find_logical_mask(const css::CssCode& code, Branch branch) {
    if (code.k != 1) {
        throw GuardExceeded("oracle decoding requires k = 1, got k = " + std::to_string(code.k));
    }
    const gf2::BinaryMatrix& kernel_of = stabilizer_block(code, branch);
    const gf2::BinaryMatrix& dual = check_block(code, branch);
    const gf2::RowspaceOracle dual_space(dual);
    for (const gf2::BinaryVector& v : gf2::kernel_basis(kernel_of)) {
        if (!dual_space.contains(v)) {
            return mask_of(v);
        }
    }
    throw EmptyCodeSet("no logical functional found (k = 0?)");
}

// Visits every n-bit mask of the given weight in ascending numeric order;
// stops early when fn returns true.
template <typename Fn>
bool for_each_weight(std::size_t n, std::size_t w, Fn&& fn) {
    if (w > n) {
        return false;
    }
    if (w == 0) {
        return fn(std::uint32_t{0});
    }
    std::vector<std::size_t> pos(w);
    for (std::size_t i = 0; i < w; ++i) {
        pos[i] = i;
    }
    while (true) {
        std::uint32_t mask = 0;
        for (std::size_t p : pos) {
            mask |= std::uint32_t{1} << p;
        }
        if (fn(mask)) {
            return true;
        }
        std::size_t i = w;
        while (i > 0 && pos[i - 1] == n - w + i - 1) {
            --i;
        }
        if (i == 0) {
            return false;
        }
        ++pos[i - 1];
        for (std::size_t j = i; j < w; ++j) {
            pos[j] = pos[j - 1] + 1;
        }
    }
}

struct BranchMasks {
    std::vector<std::uint32_t> col_synd;
    std::uint32_t logical = 0;
    std::size_t rows = 0;
};

BranchMasks branch_masks(const css::CssCode& code, Branch branch) {
    if (code.n > kMaxQubits) {
        throw GuardExceeded("oracle enumeration is capped at n <= " + std::to_string(kMaxQubits));
    }
    const gf2::BinaryMatrix& check = check_block(code, branch);
    BranchMasks m;
    m.rows = check.rows();
    m.col_synd.assign(code.n, 0);
    for (std::size_t j = 0; j < code.n; ++j) {
        for (std::size_t r = 0; r < check.rows(); ++r) {
            if (check.get(r, j)) {
                m.col_synd[j] |= std::uint32_t{1} << r;
            }
        }
    }
    m.logical = find_logical_mask(code, branch);
    return m;
}

std::uint32_t syndrome_mask(const std::vector<std::uint32_t>& col_synd, std::uint32_t error) {
    std::uint32_t s = 0;
    while (error != 0) {
        s ^= col_synd[static_cast<std::size_t>(std::countr_zero(error))];
        error &= error - 1;
    }
    return s;
}

struct BranchSearch {
    std::optional<std::size_t> distance;
    std::optional<std::uint32_t> witness;
};

BranchSearch search_branch_distance(const css::CssCode& code, Branch branch,
                                    std::size_t max_weight) {
    const BranchMasks m = branch_masks(code, branch);
    BranchSearch out;
    for (std::size_t w = 1; w <= std::min(max_weight, code.n); ++w) {
        const bool found = for_each_weight(code.n, w, [&](std::uint32_t e) {
            if (syndrome_mask(m.col_synd, e) == 0 && parity(m.logical & e)) {
                out.distance = w;
                out.witness = e;
                return true;
            }
            return false;
        });
        if (found) {
            break;
        }
    }
    return out;
}

}  // namespace

OperationalDistances measure_operational_distances(const css::CssCode& code,
                                                   std::size_t max_weight) {
    OperationalDistances out;
    out.searched_up_to = std::min(max_weight, code.n);
    const BranchSearch x = search_branch_distance(code, Branch::x_errors, max_weight);
    const BranchSearch z = search_branch_distance(code, Branch::z_errors, max_weight);
    out.x_branch = x.distance;
    out.x_witness = x.witness;
    out.z_branch = z.distance;
    out.z_witness = z.witness;
    return out;
}

ConventionResolution resolve_convention(const css::CssCode& code) {
    // Searching up to one past the largest radius requirement certifies
    // "distance >= 2t+1" even when no logical error is found.
    const std::size_t need = 2 * std::max(code.tx, code.tz) + 1;
    const std::size_t search = std::max<std::size_t>(need, 5);
    const OperationalDistances measured = measure_operational_distances(code, search);

    const auto supports = [&](std::size_t radius, const std::optional<std::size_t>& dist) {
        return !dist.has_value() || *dist >= 2 * radius + 1;
    };

    ConventionResolution res;
    res.measured = measured;
    if (supports(code.tx, measured.x_branch) && supports(code.tz, measured.z_branch)) {
        res.convention = Convention::direct;
        res.radius_x = code.tx;
        res.radius_z = code.tz;
        return res;
    }
    if (supports(code.tz, measured.x_branch) && supports(code.tx, measured.z_branch)) {
        res.convention = Convention::swapped;
        res.radius_x = code.tz;
        res.radius_z = code.tx;
        return res;
    }
    // Neither pairing works: the labels overstate a branch. Name a colliding
    // pair split from a minimum-weight logical witness.
    std::string detail = code.id + ": labeled radii (" + std::to_string(code.tx) + "," +
                         std::to_string(code.tz) + ") are unsupported; measured branch distances X=" +
                         (measured.x_branch ? std::to_string(*measured.x_branch) : ">" + std::to_string(measured.searched_up_to)) +
                         " Z=" +
                         (measured.z_branch ? std::to_string(*measured.z_branch) : ">" + std::to_string(measured.searched_up_to));
    const std::optional<std::uint32_t> witness =
        measured.x_witness.has_value() ? measured.x_witness : measured.z_witness;
    if (witness.has_value()) {
        std::uint32_t lo = 0;
        std::uint32_t v = *witness;
        std::size_t half = std::popcount(v) / 2;
        for (std::size_t i = 0; half > 0; ++i) {
            if ((v >> i) & 1) {
                lo |= std::uint32_t{1} << i;
                --half;
            }
        }
        detail += "; errors " + support_string(lo) + " and " + support_string(v ^ lo) +
                  " share a syndrome but differ by the logical " + support_string(v);
    }
    throw DistanceContradiction("DistanceContradiction: " + detail);
}

SyndromeTable::SyndromeTable(const css::CssCode& code, Branch branch, std::size_t radius)
    : branch_(branch), radius_(radius), n_(code.n) {
    const BranchMasks m = branch_masks(code, branch);
    rows_ = m.rows;
    col_synd_ = m.col_synd;
    logical_mask_ = m.logical;
    if (rows_ > kMaxStateBits) {
        throw GuardExceeded("syndrome table: too many check rows");
    }
    if (radius_ > n_) {
        throw OutOfRange("syndrome table radius exceeds n");
    }
    rep_.assign(std::size_t{1} << rows_, -1);

    const gf2::RowspaceOracle stab_space(stabilizer_block(code, branch));
    for (std::size_t w = 0; w <= radius_; ++w) {
        for_each_weight(n_, w, [&](std::uint32_t e) {
            ++enumerated_;
            const std::uint32_t s = syndrome_mask(col_synd_, e);
            if (rep_[s] < 0) {
                rep_[s] = e;
                ++entries_;
                return false;
            }
            const std::uint32_t other = static_cast<std::uint32_t>(rep_[s]);
            const std::uint32_t residual = other ^ e;
            const bool logical_fast = parity(logical_mask_ & residual);
            const bool logical_slow = !stab_space.contains(vector_of(residual, n_));
            if (logical_fast != logical_slow) {
                throw Error("internal: logical-coset parity test disagrees with row-space test");
            }
            if (logical_fast) {
                throw DistanceContradiction(
                    "DistanceContradiction: " + code.id + " " +
                    (branch == Branch::x_errors ? std::string("X") : std::string("Z")) +
                    "-branch radius " + std::to_string(radius_) + ": errors " +
                    support_string(other) + " and " + support_string(e) +
                    " share a syndrome but differ by the logical " + support_string(residual));
            }
            return false;  // degenerate pair; earlier (lighter) representative wins
        });
    }
}

std::uint32_t SyndromeTable::syndrome_of(std::uint32_t error) const {
    return syndrome_mask(col_synd_, error);
}

std::optional<std::uint32_t> SyndromeTable::decode(std::uint32_t synd) const {
    const std::int64_t r = rep_[synd];
    if (r < 0) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(r);
}

bool SyndromeTable::residual_is_logical(std::uint32_t residual) const {
    return parity(logical_mask_ & residual);
}

double exact_branch_error(const css::CssCode& code, Branch branch, double q, DecodeMode mode,
                          std::size_t radius) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw OutOfRange("branch probability outside [0, 1]");
    }
    if (code.n > kMaxQubits) {
        throw GuardExceeded("exact enumeration is capped at n <= " + std::to_string(kMaxQubits));
    }
    if (radius > code.n) {
        throw OutOfRange("radius exceeds n");
    }
    // Threshold mode is pure weight counting; only lookup decoding needs a
    // table (and a table at an unsupported radius must be allowed to throw).
    std::optional<SyndromeTable> table;
    if (mode == DecodeMode::lookup) {
        table.emplace(code, branch, radius);
    }
    std::vector<std::uint64_t> failures(code.n + 1, 0);
    const std::uint32_t total = std::uint32_t{1} << code.n;
    for (std::uint32_t e = 0; e < total; ++e) {
        const std::size_t w = static_cast<std::size_t>(std::popcount(e));
        bool fail;
        if (mode == DecodeMode::threshold) {
            fail = w > radius;
        } else {
            const std::optional<std::uint32_t> rep = table->decode(table->syndrome_of(e));
            fail = !rep.has_value() || table->residual_is_logical(e ^ *rep);
        }
        if (fail) {
            ++failures[w];
        }
    }
    double acc = 0.0;
    for (std::size_t w = 0; w <= code.n; ++w) {
        if (failures[w] != 0) {
            acc += static_cast<double>(failures[w]) * std::pow(q, static_cast<double>(w)) *
                   std::pow(1.0 - q, static_cast<double>(code.n - w));
        }
    }
    return acc;
}

double exact_joint_lookup_error(const css::CssCode& code, const pur::PauliChannel& ch,
                                const SyndromeTable& x_table, const SyndromeTable& z_table) {
    const std::size_t bits_x = x_table.rows() + 1;
    const std::size_t bits_z = z_table.rows() + 1;
    if (bits_x + bits_z > kMaxStateBits) {
        throw GuardExceeded("joint evaluation: syndrome state space too large");
    }
    const std::size_t size = std::size_t{1} << (bits_x + bits_z);
    const double pid = 1.0 - ch.px - ch.py - ch.pz;

    std::vector<double> dist(size, 0.0);
    std::vector<double> next(size, 0.0);
    dist[0] = 1.0;
    for (std::size_t i = 0; i < code.n; ++i) {
        // State packing: (sX | bX) << bits_z | (sZ | bZ); X and Z errors act
        // by XOR with fixed per-qubit deltas, Y by their composition.
        const std::size_t dx = ((static_cast<std::size_t>(x_table.column_syndrome(i)) << 1 |
                                 ((x_table.logical_mask() >> i) & 1))
                                << bits_z);
        const std::size_t dz = static_cast<std::size_t>(z_table.column_syndrome(i)) << 1 |
                               ((z_table.logical_mask() >> i) & 1);
        const std::size_t dy = dx ^ dz;
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t s = 0; s < size; ++s) {
            const double v = dist[s];
            if (v == 0.0) {
                continue;
            }
            next[s] += pid * v;
            next[s ^ dx] += ch.px * v;
            next[s ^ dz] += ch.pz * v;
            next[s ^ dy] += ch.py * v;
        }
        dist.swap(next);
    }

    const auto branch_fails = [](const SyndromeTable& t, std::uint32_t synd, bool logical_bit) {
        const std::optional<std::uint32_t> rep = t.decode(synd);
        if (!rep.has_value()) {
            return true;
        }
        return logical_bit != ((std::popcount(t.logical_mask() & *rep) & 1) != 0);
    };
    std::vector<char> fail_x(std::size_t{1} << bits_x);
    for (std::size_t s = 0; s < fail_x.size(); ++s) {
        fail_x[s] = branch_fails(x_table, static_cast<std::uint32_t>(s >> 1), (s & 1) != 0);
    }
    std::vector<char> fail_z(std::size_t{1} << bits_z);
    for (std::size_t s = 0; s < fail_z.size(); ++s) {
        fail_z[s] = branch_fails(z_table, static_cast<std::uint32_t>(s >> 1), (s & 1) != 0);
    }

    double p_fail = 0.0;
    for (std::size_t s = 0; s < size; ++s) {
        if (dist[s] == 0.0) {
            continue;
        }
        const std::size_t x_state = s >> bits_z;
        const std::size_t z_state = s & ((std::size_t{1} << bits_z) - 1);
        if (fail_x[x_state] || fail_z[z_state]) {
            p_fail += dist[s];
        }
    }
    return p_fail;
}

McResult mc_logical_error(const css::CssCode& code, const pur::PauliChannel& ch,
                          const SyndromeTable& x_table, const SyndromeTable& z_table,
                          std::uint64_t samples, std::uint64_t seed, unsigned workers) {
    if (samples == 0) {
        throw OutOfRange("sample count must be at least 1");
    }
    if (workers == 0) {
        workers = 1;
    }
    const double thr_x = ch.px;
    const double thr_y = ch.px + ch.py;
    const double thr_z = ch.px + ch.py + ch.pz;

    const auto run_worker = [&](unsigned worker, std::uint64_t count, std::uint64_t* failures) {
        std::mt19937_64 rng(splitmix64(seed ^ (0xA0761D6478BD642FULL * (worker + 1))));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::uint64_t local = 0;
        for (std::uint64_t s = 0; s < count; ++s) {
            std::uint32_t xerr = 0;
            std::uint32_t zerr = 0;
            for (std::size_t i = 0; i < code.n; ++i) {
                const double u = uniform(rng);
                if (u < thr_x) {
                    xerr |= std::uint32_t{1} << i;
                } else if (u < thr_y) {
                    xerr |= std::uint32_t{1} << i;
                    zerr |= std::uint32_t{1} << i;
                } else if (u < thr_z) {
                    zerr |= std::uint32_t{1} << i;
                }
            }
            const std::optional<std::uint32_t> rx = x_table.decode(x_table.syndrome_of(xerr));
            bool fail = !rx.has_value() || x_table.residual_is_logical(xerr ^ *rx);
            if (!fail) {
                const std::optional<std::uint32_t> rz = z_table.decode(z_table.syndrome_of(zerr));
                fail = !rz.has_value() || z_table.residual_is_logical(zerr ^ *rz);
            }
            if (fail) {
                ++local;
            }
        }
        *failures = local;
    };

    std::vector<std::uint64_t> failures(workers, 0);
    std::vector<std::thread> threads;
    const std::uint64_t base = samples / workers;
    const std::uint64_t extra = samples % workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t count = base + (w < extra ? 1 : 0);
        threads.emplace_back(run_worker, w, count, &failures[w]);
    }
    for (std::thread& t : threads) {
        t.join();
    }

    McResult result;
    result.samples = samples;
    result.seed = seed;
    result.workers = workers;
    for (std::uint64_t f : failures) {
        result.failures += f;
    }
    result.mean = static_cast<double>(result.failures) / static_cast<double>(samples);
    result.std_error =
        std::sqrt(result.mean * (1.0 - result.mean) / static_cast<double>(samples));
    return result;
}

std::span<const PointSpec> default_validation_points() {
    static const PointSpec points[] = {{0.90, 0}, {0.90, 1}, {0.95, 2}, {0.95, 3}};
    return points;
}

OracleReport run_point(const css::CssCode& code, double f0, unsigned r, std::uint64_t samples,
                       std::uint64_t seed, unsigned workers) {
    const pur::PauliChannel ch = pur::to_channel(pur::purify(f0, r));
    const ConventionResolution res = resolve_convention(code);
    const SyndromeTable x_table(code, Branch::x_errors, res.radius_x);
    const SyndromeTable z_table(code, Branch::z_errors, res.radius_z);

    OracleReport report;
    report.code_id = code.id;
    report.f0 = f0;
    report.r = r;
    report.convention = res.convention;
    report.radius_x = res.radius_x;
    report.radius_z = res.radius_z;
    report.analytic_pl = rel::logical_error(code, ch);
    const double thr_x = exact_branch_error(code, Branch::x_errors, ch.qx, DecodeMode::threshold,
                                            res.radius_x);
    const double thr_z = exact_branch_error(code, Branch::z_errors, ch.qz, DecodeMode::threshold,
                                            res.radius_z);
    report.exact_threshold = 1.0 - (1.0 - thr_x) * (1.0 - thr_z);
    report.exact_lookup = exact_joint_lookup_error(code, ch, x_table, z_table);
    report.mc = mc_logical_error(code, ch, x_table, z_table, samples, seed, workers);
    return report;
}

}  // namespace telecode::oracle
