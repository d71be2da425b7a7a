#include "telecode/purification.hpp"

#include <cmath>
#include <string>

namespace telecode::pur {

void validate(const BellDiagonalState& s) {
    for (double v : {s.a, s.b, s.c, s.d}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw OutOfRange("Bell coefficient " + std::to_string(v) + " outside [0, 1]");
        }
    }
    const double sum = s.a + s.b + s.c + s.d;
    if (std::abs(sum - 1.0) > 1e-12) {
        throw OutOfRange("Bell coefficients sum to " + std::to_string(sum) + ", expected 1");
    }
}

BellDiagonalState werner(double f0) {
    if (!(f0 >= 0.0 && f0 <= 1.0)) {
        throw OutOfRange("fidelity " + std::to_string(f0) + " outside [0, 1]");
    }
    const double rest = (1.0 - f0) / 3.0;
    return BellDiagonalState{f0, rest, rest, rest, 0};
}

BellDiagonalState dejmps_round(const BellDiagonalState& s) {
    const double n = (s.a + s.b) * (s.a + s.b) + (s.c + s.d) * (s.c + s.d);
    if (n <= 1e-300) {
        throw ZeroNormalization("recurrence normalization vanished; input state is nonphysical");
    }
    BellDiagonalState next;
    next.a = (s.a * s.a + s.b * s.b) / n;
    next.b = 2.0 * s.c * s.d / n;
    next.c = (s.c * s.c + s.d * s.d) / n;
    next.d = 2.0 * s.a * s.b / n;
    const double sum = next.a + next.b + next.c + next.d;
    next.a /= sum;
    next.b /= sum;
    next.c /= sum;
    next.d /= sum;
    next.round = s.round + 1;
    return next;
}

BellDiagonalState purify(double f0, unsigned rounds) {
    if (rounds > kMaxRounds) {
        throw GuardExceeded("purification rounds " + std::to_string(rounds) + " exceed guard of " +
                            std::to_string(kMaxRounds));
    }
    BellDiagonalState s = werner(f0);
    for (unsigned r = 0; r < rounds; ++r) {
        s = dejmps_round(s);
    }
    return s;
}

PauliChannel to_channel(const BellDiagonalState& s) {
    validate(s);
    PauliChannel ch;
    ch.px = s.c;
    ch.py = s.b;
    ch.pz = s.d;
    ch.qx = ch.px + ch.py;
    ch.qz = ch.pz + ch.py;
    return ch;
}

std::uint64_t pairs_consumed(unsigned rounds) {
    if (rounds > kMaxRounds) {
        throw GuardExceeded("purification rounds exceed guard");
    }
    return std::uint64_t{1} << rounds;
}

}  // namespace telecode::pur
