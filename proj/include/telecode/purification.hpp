#pragma once

#include <cstdint>

#include "telecode/errors.hpp"

// Bell-diagonal model of the shared EPR pair and the Pauli channel it
// induces on teleportation. Coefficients (a, b, c, d) weight the Bell states
// (Phi+, Psi-, Psi+, Phi-); teleporting through the pair applies (I, Y, X, Z)
// with those probabilities.

namespace telecode::pur {

inline constexpr unsigned kMaxRounds = 32;

struct BellDiagonalState {
    double a = 1.0;  // fidelity (Phi+ coefficient)
    double b = 0.0;  // Psi-
    double c = 0.0;  // Psi+
    double d = 0.0;  // Phi-
    unsigned round = 0;
};

/// Throws OutOfRange unless the coefficients are probabilities summing to 1
/// within 1e-12.
void validate(const BellDiagonalState& s);

/// Werner state of fidelity f0: (f0, (1-f0)/3, (1-f0)/3, (1-f0)/3), round 0.
BellDiagonalState werner(double f0);

/// One recurrence purification round:
///   a' = (a^2+b^2)/N, b' = 2cd/N, c' = (c^2+d^2)/N, d' = 2ab/N,
///   N = (a+b)^2 + (c+d)^2.
/// The output is renormalized to sum exactly 1; round is incremented.
BellDiagonalState dejmps_round(const BellDiagonalState& s);

/// werner(f0) advanced by `rounds` purification rounds (guard: <= kMaxRounds).
BellDiagonalState purify(double f0, unsigned rounds);

struct PauliChannel {
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;
    double qx = 0.0;  // px + py, the bit-flip branch probability
    double qz = 0.0;  // pz + py, the phase-flip branch probability
};

/// pX = c, pY = b, pZ = d.
PauliChannel to_channel(const BellDiagonalState& s);

/// Ideal recurrence-protocol consumption: 2^rounds raw pairs per output pair.
/// Auxiliary metric only; selection never uses it.
std::uint64_t pairs_consumed(unsigned rounds);

}  // namespace telecode::pur
